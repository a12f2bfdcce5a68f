use std::cmp::Ordering;

use super::kernel::{g, hard, Kernel};
use super::{check_frame, correlation, DecoderConfig, Decoded};
use crate::error::Result;
use crate::monomial::MonomialCode;

/// One decoding path. Depth `d ∈ 1..=n` of the decoding tree owns
/// `N >> d` entries starting at `offsets[d]` in `llr` and `left`.
#[derive(Clone, Debug, Default)]
struct Path {
    llr: Vec<f64>,
    /// Codeword of the last completed left child at each depth.
    left: Vec<u8>,
    /// Codeword being assembled along the current chain of right children.
    acc: Vec<u8>,
    metric: f64,
    trace: Vec<f64>,
}

/// Successive-cancellation list decoder with LLR-based path metrics and
/// ML-in-the-list selection of the final candidate.
#[derive(Clone, Debug)]
pub struct SclDecoder {
    n: usize,
    list_size: usize,
    kernel: Kernel,
    frozen: Vec<bool>,
    offsets: Vec<usize>,
    slots: Vec<Path>,
    active: Vec<usize>,
    leaf: Vec<f64>,
    candidates: Vec<(f64, usize, u8)>,
    out: Vec<u8>,
    record_metrics: bool,
}

impl SclDecoder {
    pub fn new(code: &MonomialCode, list_size: usize, kernel: Kernel) -> Self {
        assert!(list_size >= 1, "list size must be at least 1");
        let n = code.n();
        let len = code.len();
        let mut offsets = vec![0; n + 1];
        for d in 2..=n {
            offsets[d] = offsets[d - 1] + (len >> (d - 1));
        }
        let blank = Path {
            llr: vec![0.0; len.saturating_sub(1)],
            left: vec![0; len.saturating_sub(1)],
            acc: vec![0; len],
            metric: 0.0,
            trace: Vec::new(),
        };
        SclDecoder {
            n,
            list_size,
            kernel,
            frozen: code.info_mask().iter().map(|&info| !info).collect(),
            offsets,
            slots: vec![blank; list_size],
            active: Vec::with_capacity(list_size),
            leaf: vec![0.0; list_size],
            candidates: Vec::with_capacity(2 * list_size),
            out: vec![0; len],
            record_metrics: false,
        }
    }

    /// Keep the per-leaf metric history of every path (for inspection).
    pub fn set_record_metrics(&mut self, on: bool) {
        self.record_metrics = on;
    }

    /// Metric histories of the final list, in list order.
    pub fn metric_traces(&self) -> Vec<&[f64]> {
        self.active.iter().map(|&s| self.slots[s].trace.as_slice()).collect()
    }

    /// Final path metrics, in list order (ascending).
    pub fn final_metrics(&self) -> Vec<f64> {
        self.active.iter().map(|&s| self.slots[s].metric).collect()
    }

    /// Codewords of the final list, in list order.
    pub fn list_codewords(&self) -> Vec<&[u8]> {
        self.active.iter().map(|&s| self.slots[s].acc.as_slice()).collect()
    }

    pub fn decode(&mut self, llr: &[f64]) -> &[u8] {
        let len = self.frozen.len();
        assert_eq!(llr.len(), len, "frame length");
        self.active.clear();
        self.active.push(0);
        self.slots[0].metric = 0.0;
        self.slots[0].trace.clear();
        for phi in 0..len {
            for k in 0..self.active.len() {
                let slot = self.active[k];
                self.leaf[k] = self.compute_leaf(slot, llr, phi);
            }
            if self.frozen[phi] {
                for k in 0..self.active.len() {
                    let slot = self.active[k];
                    let l = self.leaf[k];
                    self.slots[slot].metric += if l < 0.0 { -l } else { 0.0 };
                    self.propagate(slot, phi, 0);
                }
            } else {
                self.fork(phi);
            }
        }
        // ML-in-the-list: highest correlation, earliest list position on ties
        let mut best = self.active[0];
        let mut best_corr = correlation(&self.slots[best].acc, llr);
        for &slot in &self.active[1..] {
            let corr = correlation(&self.slots[slot].acc, llr);
            if corr > best_corr {
                best = slot;
                best_corr = corr;
            }
        }
        self.out.copy_from_slice(&self.slots[best].acc);
        &self.out
    }

    fn fork(&mut self, phi: usize) {
        self.candidates.clear();
        for (pos, &slot) in self.active.iter().enumerate() {
            let l = self.leaf[pos];
            let m = self.slots[slot].metric;
            let h = hard(l);
            self.candidates.push((m, pos, h));
            self.candidates.push((m + l.abs(), pos, 1 - h));
        }
        // stable: ties keep list order, decision along the LLR first
        self.candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        self.candidates.truncate(self.list_size);

        let old_active = std::mem::take(&mut self.active);
        let mut used = vec![false; old_active.len()];
        let mut free: Vec<usize> = (0..self.list_size).filter(|s| !old_active.contains(s)).collect();
        for &(_, pos, _) in &self.candidates {
            if !used[pos] {
                used[pos] = true;
            }
        }
        free.extend(old_active.iter().enumerate().filter(|&(p, _)| !used[p]).map(|(_, &s)| s));
        let mut claimed = vec![false; old_active.len()];
        let mut assignment = Vec::with_capacity(self.candidates.len());
        for &(_, pos, _) in &self.candidates {
            let src = old_active[pos];
            let slot = if !claimed[pos] {
                claimed[pos] = true;
                src
            } else {
                let dst = free.pop().expect("enough free slots");
                copy_path(&mut self.slots, src, dst);
                dst
            };
            assignment.push(slot);
        }
        for (i, &(metric, _, bit)) in self.candidates.clone().iter().enumerate() {
            let slot = assignment[i];
            self.slots[slot].metric = metric;
            self.propagate(slot, phi, bit);
            self.active.push(slot);
        }
    }

    fn compute_leaf(&mut self, slot: usize, channel: &[f64], phi: usize) -> f64 {
        let n = self.n;
        let len = channel.len();
        let start = if phi == 0 { 0 } else { n - 1 - phi.trailing_zeros() as usize };
        let kernel = self.kernel;
        let path = &mut self.slots[slot];
        for d in start..n {
            let m = len >> (d + 1);
            let right = phi >> (n - 1 - d) & 1 == 1;
            let child_off = self.offsets[d + 1];
            let (head, tail) = path.llr.split_at_mut(child_off);
            let parent: &[f64] = if d == 0 { channel } else { &head[self.offsets[d]..] };
            let child = &mut tail[..m];
            if right {
                let left = &path.left[child_off..child_off + m];
                for i in 0..m {
                    child[i] = g(parent[i], parent[i + m], left[i]);
                }
            } else {
                for i in 0..m {
                    child[i] = kernel.f(parent[i], parent[i + m]);
                }
            }
        }
        path.llr[self.offsets[n]]
    }

    fn propagate(&mut self, slot: usize, phi: usize, bit: u8) {
        let n = self.n;
        let record = self.record_metrics;
        let path = &mut self.slots[slot];
        if record {
            let m = path.metric;
            path.trace.push(m);
        }
        path.acc[0] = bit;
        let mut d = n;
        let mut m = 1;
        loop {
            let off = self.offsets[d];
            if phi >> (n - d) & 1 == 0 {
                path.left[off..off + m].copy_from_slice(&path.acc[..m]);
                return;
            }
            let (lo, hi) = path.acc.split_at_mut(m);
            hi[..m].copy_from_slice(lo);
            for (a, &l) in lo.iter_mut().zip(&path.left[off..off + m]) {
                *a ^= l;
            }
            m *= 2;
            d -= 1;
            if d == 0 {
                return;
            }
        }
    }
}

fn copy_path(slots: &mut [Path], src: usize, dst: usize) {
    debug_assert_ne!(src, dst);
    if src < dst {
        let (a, b) = slots.split_at_mut(dst);
        b[0].clone_from(&a[src]);
    } else {
        let (a, b) = slots.split_at_mut(src);
        a[dst].clone_from(&b[0]);
    }
}

/// Successive-cancellation list decoding with `config.list_size` paths.
pub fn scl_decode(code: &MonomialCode, frame: &[f64], config: &DecoderConfig) -> Result<Decoded> {
    config.validate()?;
    check_frame(code, frame)?;
    let mut dec = SclDecoder::new(code, config.list_size, config.kernel);
    let c = dec.decode(frame).to_vec();
    Decoded::from_codeword(code, c)
}
