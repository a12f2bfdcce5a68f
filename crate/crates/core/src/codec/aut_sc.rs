use super::kernel::Kernel;
use super::sc::ScDecoder;
use super::{check_frame, correlation, DecoderConfig, Decoded};
use crate::automorphism::AffineAutomorphism;
use crate::error::{Error, Result};
use crate::monomial::MonomialCode;

/// Automorphism-ensemble SC: one SC pass per position permutation,
/// followed by ML-in-the-list selection among the un-permuted estimates.
#[derive(Clone, Debug)]
pub struct AutScDecoder {
    sc: ScDecoder,
    permuted: Vec<f64>,
    candidate: Vec<u8>,
    best: Vec<u8>,
    correlations: Vec<f64>,
    selected: usize,
}

impl AutScDecoder {
    pub fn new(code: &MonomialCode, kernel: Kernel) -> Self {
        let len = code.len();
        AutScDecoder {
            sc: ScDecoder::new(code, kernel),
            permuted: vec![0.0; len],
            candidate: vec![0; len],
            best: vec![0; len],
            correlations: Vec::new(),
            selected: 0,
        }
    }

    /// Decodes with the given automorphisms (at least one).
    pub fn decode(&mut self, llr: &[f64], auts: &[AffineAutomorphism]) -> &[u8] {
        assert!(!auts.is_empty(), "empty automorphism ensemble");
        self.correlations.clear();
        let mut best_corr = f64::NEG_INFINITY;
        for (m, aut) in auts.iter().enumerate() {
            let table = aut.position_table();
            assert_eq!(table.len(), llr.len(), "automorphism length");
            for (p, &src) in self.permuted.iter_mut().zip(&table) {
                *p = llr[src];
            }
            let est = self.sc.decode(&self.permuted);
            for (j, &src) in table.iter().enumerate() {
                self.candidate[src] = est[j];
            }
            let corr = correlation(&self.candidate, llr);
            self.correlations.push(corr);
            // strict comparison keeps the lowest index on ties
            if m == 0 || corr > best_corr {
                best_corr = corr;
                self.selected = m;
                self.best.copy_from_slice(&self.candidate);
            }
        }
        &self.best
    }

    /// Correlation of every candidate of the last call, in ensemble order.
    pub fn correlations(&self) -> &[f64] {
        &self.correlations
    }

    /// Ensemble index of the candidate chosen in the last call.
    pub fn selected(&self) -> usize {
        self.selected
    }
}

/// Aut-SC decoding with exactly `config.ensemble_size` automorphisms.
pub fn aut_sc_decode(
    code: &MonomialCode,
    frame: &[f64],
    config: &DecoderConfig,
    automorphisms: &[AffineAutomorphism],
) -> Result<Decoded> {
    config.validate()?;
    check_frame(code, frame)?;
    if automorphisms.len() != config.ensemble_size {
        return Err(Error::DimensionMismatch { expected: config.ensemble_size, got: automorphisms.len() });
    }
    if let Some(bad) = automorphisms.iter().find(|a| a.n() != code.n()) {
        return Err(Error::DimensionMismatch { expected: code.n(), got: bad.n() });
    }
    let mut dec = AutScDecoder::new(code, config.kernel);
    let c = dec.decode(frame, automorphisms).to_vec();
    Decoded::from_codeword(code, c)
}
