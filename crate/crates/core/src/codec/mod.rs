//! Polar encoding and the SC, SCL and automorphism-ensemble SC decoders.

mod aut_sc;
mod encoder;
mod kernel;
mod sc;
mod scl;

pub use aut_sc::{aut_sc_decode, AutScDecoder};
pub use encoder::{encode, is_codeword, message_from_codeword, polar_transform};
pub use kernel::{g, hard, Kernel};
pub use sc::ScDecoder;
pub use scl::{scl_decode, SclDecoder};

pub(crate) use encoder::encode_bits;

use crate::error::{Error, Result};
use crate::monomial::{MessageWord, MonomialCode};

/// Binary codeword of length `N`, one bit per byte.
pub type Codeword = Vec<u8>;

/// Channel LLRs of length `N`; positive favours bit 0.
pub type LlrFrame = Vec<f64>;

/// Decoder parameters shared by the SC family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecoderConfig {
    pub list_size: usize,
    pub ensemble_size: usize,
    pub kernel: Kernel,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig { list_size: 8, ensemble_size: 8, kernel: Kernel::Exact }
    }
}

impl DecoderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.list_size == 0 {
            return Err(Error::InvalidDecoder("list size must be at least 1".into()));
        }
        if self.ensemble_size == 0 {
            return Err(Error::InvalidDecoder("ensemble size must be at least 1".into()));
        }
        Ok(())
    }
}

/// Hard output of a decoder: message and its re-encoded codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub message: MessageWord,
    pub codeword: Codeword,
}

impl Decoded {
    pub(crate) fn from_codeword(code: &MonomialCode, codeword: Codeword) -> Result<Self> {
        Ok(Decoded { message: message_from_codeword(code, &codeword)?, codeword })
    }
}

/// `Σ_j (1 − 2c_j) · llr_j`, the ML-in-the-list metric.
pub fn correlation(codeword: &[u8], llr: &[f64]) -> f64 {
    codeword.iter().zip(llr).map(|(&c, &y)| if c == 0 { y } else { -y }).sum()
}

pub(crate) fn check_frame(code: &MonomialCode, frame: &[f64]) -> Result<()> {
    if frame.len() != code.len() {
        return Err(Error::DimensionMismatch { expected: code.len(), got: frame.len() });
    }
    Ok(())
}

/// Plain successive-cancellation decoding.
pub fn sc_decode(code: &MonomialCode, frame: &[f64], config: &DecoderConfig) -> Result<Decoded> {
    check_frame(code, frame)?;
    let mut dec = ScDecoder::new(code, config.kernel);
    let c = dec.decode(frame).to_vec();
    Decoded::from_codeword(code, c)
}
