use super::kernel::{g, hard, Kernel};
use crate::monomial::MonomialCode;

/// Successive-cancellation decoder with buffers sized for one code.
#[derive(Clone, Debug)]
pub struct ScDecoder {
    frozen: Vec<bool>,
    kernel: Kernel,
    scratch: Vec<f64>,
    u: Vec<u8>,
    x: Vec<u8>,
}

impl ScDecoder {
    pub fn new(code: &MonomialCode, kernel: Kernel) -> Self {
        let len = code.len();
        ScDecoder {
            frozen: code.info_mask().iter().map(|&info| !info).collect(),
            kernel,
            scratch: vec![0.0; len],
            u: vec![0; len],
            x: vec![0; len],
        }
    }

    /// Decodes one frame; returns the codeword estimate. The decided input
    /// vector (frozen rows zero) is available from [`ScDecoder::input`].
    pub fn decode(&mut self, llr: &[f64]) -> &[u8] {
        assert_eq!(llr.len(), self.frozen.len(), "frame length");
        node(self.kernel, llr, &self.frozen, &mut self.scratch, &mut self.x, &mut self.u);
        &self.x
    }

    /// Input vector `u` of the last decoded frame.
    pub fn input(&self) -> &[u8] {
        &self.u
    }
}

fn node(kernel: Kernel, llr: &[f64], frozen: &[bool], scratch: &mut [f64], x: &mut [u8], u: &mut [u8]) {
    let len = llr.len();
    if len == 1 {
        let bit = if frozen[0] { 0 } else { hard(llr[0]) };
        u[0] = bit;
        x[0] = bit;
        return;
    }
    let half = len / 2;
    let (buf, rest) = scratch.split_at_mut(half);
    let (llr_lo, llr_hi) = llr.split_at(half);
    for ((b, &a), &c) in buf.iter_mut().zip(llr_lo).zip(llr_hi) {
        *b = kernel.f(a, c);
    }
    let (x_lo, x_hi) = x.split_at_mut(half);
    let (u_lo, u_hi) = u.split_at_mut(half);
    let (fr_lo, fr_hi) = frozen.split_at(half);
    node(kernel, buf, fr_lo, rest, x_lo, u_lo);
    for i in 0..half {
        buf[i] = g(llr_lo[i], llr_hi[i], x_lo[i]);
    }
    node(kernel, buf, fr_hi, rest, x_hi, u_hi);
    for (a, &b) in x_lo.iter_mut().zip(x_hi.iter()) {
        *a ^= b;
    }
}
