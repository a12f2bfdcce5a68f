//! BPSK over AWGN and Monte Carlo block-error-rate estimation.
//!
//! Every frame owns a ChaCha8 stream selected by its index, seeded from the
//! master seed and the SNR point. Frames are decoded in parallel in chunks
//! and then scanned in index order, so counts do not depend on the number
//! of worker threads. The message, the noise and (for Aut-SC) the sampled
//! automorphisms are drawn from the frame's stream in that order, which
//! makes different decoders see identical channel realizations.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::{find_block_structure, sample_blta, AffineAutomorphism, BlockStructure};
use crate::codec::{encode_bits, AutScDecoder, Kernel, ScDecoder, SclDecoder};
use crate::error::{Error, Result};
use crate::monomial::MonomialCode;

/// Two-sided 97.5% standard normal quantile.
pub const WILSON_Z: f64 = 1.959_963_984_540_054;

/// BI-AWGN channel at a given `E_b/N_0` for a code of rate `R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    pub ebn0_db: f64,
    pub rate: f64,
    sigma2: f64,
}

impl ChannelParams {
    /// `σ² = 1 / (2 R 10^{EbN0/10})`.
    pub fn new(ebn0_db: f64, rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidSimulation(format!("rate {rate} outside (0, 1]")));
        }
        let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0));
        Self::check(sigma2)?;
        Ok(ChannelParams { ebn0_db, rate, sigma2 })
    }

    pub fn for_code(code: &MonomialCode, ebn0_db: f64) -> Result<Self> {
        Self::new(ebn0_db, code.dimension() as f64 / code.len() as f64)
    }

    /// Channel given directly by its noise variance.
    pub fn from_noise_variance(sigma2: f64, rate: f64) -> Result<Self> {
        Self::check(sigma2)?;
        let ebn0_db = 10.0 * (1.0 / (2.0 * rate * sigma2)).log10();
        Ok(ChannelParams { ebn0_db, rate, sigma2 })
    }

    fn check(sigma2: f64) -> Result<()> {
        if sigma2 > 0.0 && sigma2.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidSimulation(format!("noise variance {sigma2} must be positive and finite")))
        }
    }

    pub fn noise_variance(&self) -> f64 {
        self.sigma2
    }
}

/// Channel outputs `y_j = (1 − 2c_j) + n_j`, `n_j ~ N(0, σ²)`.
pub fn transmit_symbols<R: Rng + ?Sized>(codeword: &[u8], params: &ChannelParams, rng: &mut R, y: &mut [f64]) {
    let sigma = params.sigma2.sqrt();
    for (out, &c) in y.iter_mut().zip(codeword) {
        let n: f64 = StandardNormal.sample(rng);
        *out = if c == 0 { 1.0 } else { -1.0 } + sigma * n;
    }
}

/// Channel LLRs `2 y_j / σ²` for one transmitted codeword.
pub fn transmit<R: Rng + ?Sized>(codeword: &[u8], params: &ChannelParams, rng: &mut R) -> Vec<f64> {
    let mut y = vec![0.0; codeword.len()];
    transmit_symbols(codeword, params, rng, &mut y);
    let scale = 2.0 / params.sigma2;
    y.iter_mut().for_each(|v| *v *= scale);
    y
}

/// Which automorphisms an Aut-SC decoder uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleMode {
    /// Fresh `BLTA(s)` samples for every frame.
    Fresh,
    /// One ensemble sampled per simulation and reused for every frame.
    Fixed,
    /// Fresh samples from `LTA(2, n)` only.
    Lta,
}

/// A decoder choice in label form: `sc`, `scl-<L>`, `aut-<M>-sc`,
/// `aut-<M>-sc-fixed` or `aut-<M>-sc-lta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderSpec {
    Sc,
    Scl { list_size: usize },
    AutSc { ensemble_size: usize, mode: EnsembleMode },
}

impl FromStr for DecoderSpec {
    type Err = Error;

    fn from_str(label: &str) -> Result<Self> {
        let bad = || Error::InvalidDecoder(format!("unrecognized decoder {label:?}"));
        let size = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(bad()),
            }
        };
        let lower = label.trim().to_ascii_lowercase();
        if lower == "sc" {
            return Ok(DecoderSpec::Sc);
        }
        if let Some(l) = lower.strip_prefix("scl-") {
            return Ok(DecoderSpec::Scl { list_size: size(l)? });
        }
        let rest = lower.strip_prefix("aut-").ok_or_else(bad)?;
        let (m, tail) = rest.split_once("-sc").ok_or_else(bad)?;
        let mode = match tail {
            "" => EnsembleMode::Fresh,
            "-fixed" => EnsembleMode::Fixed,
            "-lta" => EnsembleMode::Lta,
            _ => return Err(bad()),
        };
        Ok(DecoderSpec::AutSc { ensemble_size: size(m)?, mode })
    }
}

impl fmt::Display for DecoderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderSpec::Sc => f.write_str("sc"),
            DecoderSpec::Scl { list_size } => write!(f, "scl-{list_size}"),
            DecoderSpec::AutSc { ensemble_size, mode } => {
                write!(f, "aut-{ensemble_size}-sc")?;
                match mode {
                    EnsembleMode::Fresh => Ok(()),
                    EnsembleMode::Fixed => f.write_str("-fixed"),
                    EnsembleMode::Lta => f.write_str("-lta"),
                }
            }
        }
    }
}

impl Serialize for DecoderSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DecoderSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Stop after `target_errors` block errors or `max_frames` frames,
/// whichever comes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopRule {
    pub max_frames: u64,
    pub target_errors: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule { max_frames: 1_000_000, target_errors: 100 }
    }
}

/// Outcome at one SNR point; serializes to one CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub code_id: String,
    pub decoder: String,
    pub ebn0_db: f64,
    pub frames: u64,
    pub block_errors: u64,
    pub bler: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
}

impl SimResult {
    pub fn ci95(&self) -> (f64, f64) {
        (self.ci_lo, self.ci_hi)
    }

    /// Whether the two 95% intervals are disjoint.
    pub fn separated_from(&self, other: &SimResult) -> bool {
        self.ci_hi < other.ci_lo || other.ci_hi < self.ci_lo
    }
}

/// Wilson score interval for `errors` successes in `frames` trials.
pub fn wilson_interval(errors: u64, frames: u64, z: f64) -> (f64, f64) {
    if frames == 0 {
        return (0.0, 1.0);
    }
    let n = frames as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // the bounds are exactly 0 and 1 at the extremes; avoid rounding residue
    let lo = if errors == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if errors == frames { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Full description of a BLER run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Simulation {
    pub code_id: String,
    pub decoder: DecoderSpec,
    pub kernel: Kernel,
    pub ebn0_db: Vec<f64>,
    pub stop: StopRule,
    pub seed: u64,
    pub workers: usize,
}

impl Simulation {
    pub fn new(code_id: impl Into<String>, decoder: DecoderSpec, ebn0_db: Vec<f64>) -> Self {
        Simulation {
            code_id: code_id.into(),
            decoder,
            kernel: Kernel::Exact,
            ebn0_db,
            stop: StopRule::default(),
            seed: 0,
            workers: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.stop.max_frames == 0 {
            return Err(Error::InvalidSimulation("max_frames must be at least 1".into()));
        }
        if self.stop.target_errors == 0 {
            return Err(Error::InvalidSimulation("target_errors must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidSimulation("workers must be at least 1".into()));
        }
        if self.ebn0_db.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSimulation("non-finite Eb/N0".into()));
        }
        Ok(())
    }

    /// Runs every SNR point in order.
    pub fn run(&self, code: &MonomialCode) -> Result<Vec<SimResult>> {
        self.validate()?;
        let ensemble = EnsembleSource::new(code, &self.decoder, self.seed)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidSimulation(e.to_string()))?;
        let mut out = Vec::with_capacity(self.ebn0_db.len());
        for (point, &ebn0) in self.ebn0_db.iter().enumerate() {
            let params = ChannelParams::for_code(code, ebn0)?;
            let point_seed = mix(self.seed, point as u64);
            let (frames, errors) = pool.install(|| self.run_point(code, &params, point_seed, &ensemble));
            let (ci_lo, ci_hi) = wilson_interval(errors, frames, WILSON_Z);
            out.push(SimResult {
                code_id: self.code_id.clone(),
                decoder: self.decoder.to_string(),
                ebn0_db: ebn0,
                frames,
                block_errors: errors,
                bler: errors as f64 / frames as f64,
                ci_lo,
                ci_hi,
                seed: self.seed,
            });
        }
        Ok(out)
    }

    fn run_point(&self, code: &MonomialCode, params: &ChannelParams, seed: u64, ens: &EnsembleSource) -> (u64, u64) {
        let mut frames = 0u64;
        let mut errors = 0u64;
        let mut chunk = 256u64;
        while frames < self.stop.max_frames {
            let end = (frames + chunk).min(self.stop.max_frames);
            let outcomes: Vec<bool> = (frames..end)
                .into_par_iter()
                .map_init(
                    || FrameWorker::new(code, &self.decoder, self.kernel),
                    |w, idx| w.frame_error(code, params, seed, idx, ens),
                )
                .collect();
            for failed in outcomes {
                frames += 1;
                errors += failed as u64;
                if errors >= self.stop.target_errors {
                    return (frames, errors);
                }
            }
            chunk = (chunk * 2).min(16_384);
        }
        (frames, errors)
    }
}

/// Convenience wrapper around [`Simulation::run`].
pub fn run_bler(code: &MonomialCode, sim: &Simulation) -> Result<Vec<SimResult>> {
    sim.run(code)
}

/// Writes results as CSV with a header row.
pub fn write_csv<W: Write>(results: &[SimResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(r).map_err(|e| Error::InvalidSimulation(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::InvalidSimulation(e.to_string()))
}

/// splitmix64 finalizer applied to `seed + 1 + k·φ`.
fn mix(seed: u64, k: u64) -> u64 {
    let mut z = seed.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// RNG for frame `index` at the SNR point seeded with `point_seed`.
pub fn frame_rng(point_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(point_seed);
    rng.set_stream(index);
    rng
}

enum EnsembleSource {
    None,
    Sampled { structure: BlockStructure, size: usize },
    Fixed(Vec<AffineAutomorphism>),
}

impl EnsembleSource {
    fn new(code: &MonomialCode, spec: &DecoderSpec, seed: u64) -> Result<Self> {
        let DecoderSpec::AutSc { ensemble_size, mode } = *spec else {
            return Ok(EnsembleSource::None);
        };
        Ok(match mode {
            EnsembleMode::Lta => {
                EnsembleSource::Sampled { structure: BlockStructure::trivial(code.n()), size: ensemble_size }
            }
            EnsembleMode::Fresh => {
                EnsembleSource::Sampled { structure: find_block_structure(code)?, size: ensemble_size }
            }
            EnsembleMode::Fixed => {
                let s = find_block_structure(code)?;
                let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, u64::MAX));
                EnsembleSource::Fixed((0..ensemble_size).map(|_| sample_blta(&s, &mut rng)).collect())
            }
        })
    }
}

enum Engine {
    Sc(ScDecoder),
    Scl(SclDecoder),
    AutSc(AutScDecoder, Vec<AffineAutomorphism>),
}

struct FrameWorker {
    engine: Engine,
    bits: Vec<u8>,
    codeword: Vec<u8>,
    llr: Vec<f64>,
}

impl FrameWorker {
    fn new(code: &MonomialCode, spec: &DecoderSpec, kernel: Kernel) -> Self {
        let engine = match *spec {
            DecoderSpec::Sc => Engine::Sc(ScDecoder::new(code, kernel)),
            DecoderSpec::Scl { list_size } => Engine::Scl(SclDecoder::new(code, list_size, kernel)),
            DecoderSpec::AutSc { ensemble_size, .. } => {
                Engine::AutSc(AutScDecoder::new(code, kernel), Vec::with_capacity(ensemble_size))
            }
        };
        FrameWorker {
            engine,
            bits: vec![0; code.dimension()],
            codeword: vec![0; code.len()],
            llr: vec![0.0; code.len()],
        }
    }

    fn frame_error(
        &mut self,
        code: &MonomialCode,
        params: &ChannelParams,
        point_seed: u64,
        index: u64,
        ens: &EnsembleSource,
    ) -> bool {
        let mut rng = frame_rng(point_seed, index);
        for b in self.bits.iter_mut() {
            *b = rng.random::<u8>() & 1;
        }
        encode_bits(code, &self.bits, &mut self.codeword);
        transmit_symbols(&self.codeword, params, &mut rng, &mut self.llr);
        let scale = 2.0 / params.noise_variance();
        self.llr.iter_mut().for_each(|v| *v *= scale);
        let decoded = match &mut self.engine {
            Engine::Sc(d) => d.decode(&self.llr),
            Engine::Scl(d) => d.decode(&self.llr),
            Engine::AutSc(d, auts) => match ens {
                EnsembleSource::Fixed(fixed) => d.decode(&self.llr, fixed),
                EnsembleSource::Sampled { structure, size } => {
                    auts.clear();
                    auts.extend((0..*size).map(|_| sample_blta(structure, &mut rng)));
                    d.decode(&self.llr, auts)
                }
                EnsembleSource::None => unreachable!("Aut-SC without an ensemble"),
            },
        };
        decoded != self.codeword.as_slice()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_reference_values() {
        // 10 errors in 100 frames, evaluated independently in double precision
        let (lo, hi) = wilson_interval(10, 100, WILSON_Z);
        assert!((lo - 0.055_229_137).abs() < 1e-8, "{lo}");
        assert!((hi - 0.174_365_662).abs() < 1e-8, "{hi}");
        let (lo, hi) = wilson_interval(0, 50, WILSON_Z);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.08);
    }

    #[test]
    fn decoder_labels_round_trip() {
        for label in ["sc", "scl-8", "scl-1", "aut-8-sc", "aut-4-sc-fixed", "aut-8-sc-lta"] {
            let spec: DecoderSpec = label.parse().unwrap();
            assert_eq!(spec.to_string(), label);
        }
        assert_eq!("SCL-32".parse::<DecoderSpec>().unwrap(), DecoderSpec::Scl { list_size: 32 });
        for bad in ["", "scl", "scl-0", "aut-sc", "aut-8-scx", "bp"] {
            assert!(bad.parse::<DecoderSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn noise_variance_formula() {
        let p = ChannelParams::new(0.0, 0.5).unwrap();
        assert!((p.noise_variance() - 1.0).abs() < 1e-15);
        let p = ChannelParams::new(10.0, 0.5).unwrap();
        assert!((p.noise_variance() - 0.1).abs() < 1e-15);
        assert!(ChannelParams::new(1.0, 0.0).is_err());
        assert!(ChannelParams::from_noise_variance(0.0, 0.5).is_err());
    }

    #[test]
    fn seed_mixing_separates_points() {
        assert_ne!(mix(0, 0), mix(0, 1));
        assert_ne!(mix(0, 1), mix(1, 0));
    }
}
