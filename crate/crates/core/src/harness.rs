//! Report builders behind the command-line tool. Each function returns plain
//! data; the binary only parses flags and writes files.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automorphism::{blta_size, find_block_structure, sample_blta, AffineAutomorphism, BlockStructure};
use crate::channel::{DecoderSpec, SimResult, Simulation, StopRule};
use crate::codec::Kernel;
use crate::construction::{
    bhattacharyya_bec_design, enumerate_decreasing_codes, ConstructionKind, ConstructionSpec,
};
use crate::error::{Error, Result};
use crate::monomial::MonomialCode;

/// Process exit status for an error: 3 for capability limits, 2 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capability { .. } => 3,
        Error::UnsupportedVariables { n, max } if n > max => 3,
        _ => 2,
    }
}

/// `d.dde<exp>` with `digits` significant figures, rounding half up.
pub fn sci_format(value: &BigUint, digits: usize) -> String {
    let digits = digits.max(1);
    let text = value.to_str_radix(10);
    if text.len() <= 1 && digits == 1 {
        return format!("{text}e0");
    }
    let mut exponent = text.len() - 1;
    let mut mantissa: Vec<u8> = text.bytes().map(|b| b - b'0').collect();
    mantissa.resize(mantissa.len().max(digits + 1), 0);
    let round_up = mantissa[digits] >= 5;
    mantissa.truncate(digits);
    if round_up {
        let mut i = digits;
        loop {
            if i == 0 {
                mantissa.insert(0, 1);
                mantissa.truncate(digits);
                exponent += 1;
                break;
            }
            i -= 1;
            if mantissa[i] == 9 {
                mantissa[i] = 0;
            } else {
                mantissa[i] += 1;
                break;
            }
        }
    }
    let lead = mantissa[0];
    let rest: String = mantissa[1..].iter().map(|d| char::from(b'0' + d)).collect();
    if rest.is_empty() {
        format!("{lead}e{exponent}")
    } else {
        format!("{lead}.{rest}e{exponent}")
    }
}

fn generator_labels(code: &MonomialCode) -> Result<Vec<String>> {
    Ok(code.minimal_generators()?.iter().map(|g| g.to_string()).collect())
}

/// Structural summary of one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub s: Vec<usize>,
    /// `|BLTA(s, n)|` as an exact decimal integer.
    pub aut_size: String,
    pub aut_size_sci: String,
    /// Minimal generators `I_min` as row indices.
    pub generators: Vec<usize>,
    pub generator_monomials: Vec<String>,
    /// BEC designs only: the last selected channel tied in `Z` with a frozen one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection_tie: Option<bool>,
}

pub fn analyze_code(code: &MonomialCode) -> Result<AnalysisReport> {
    code.require_decreasing()?;
    let s = find_block_structure(code)?;
    let size = blta_size(&s);
    Ok(AnalysisReport {
        n: code.n(),
        k: code.dimension(),
        s: s.sizes().to_vec(),
        aut_size: size.to_string(),
        aut_size_sci: sci_format(&size, 3),
        generators: code.generator_rows()?,
        generator_monomials: generator_labels(code)?,
        selection_tie: None,
    })
}

pub fn analyze(spec: &ConstructionSpec) -> Result<AnalysisReport> {
    let code = spec.build()?;
    let mut report = analyze_code(&code)?;
    if spec.kind == ConstructionKind::BhattacharyyaBec {
        let (epsilon, k) = (spec.epsilon.unwrap_or_default(), code.dimension());
        report.selection_tie = Some(bhattacharyya_bec_design(epsilon, k, spec.n)?.boundary_tie);
    }
    Ok(report)
}

/// One point of an ε sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub aut_size: String,
    pub aut_size_sci: String,
    pub log10_aut_size: f64,
    pub s: String,
    pub i_min: String,
    pub selection_tie: bool,
}

/// `ε = 0.01, 0.02, …, 0.50`. The BEC recursion maps `ε ↦ 1 − ε` onto
/// complemented rows, so for `K = N/2` the upper half mirrors the lower.
pub fn default_epsilon_grid() -> Vec<f64> {
    (1..=50).map(|i| i as f64 / 100.0).collect()
}

fn join_rows(rows: &[usize]) -> String {
    rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
}

/// Nearest `f64`; exact group orders for `n ≤ 16` stay far below `f64::MAX`.
fn to_f64(x: &BigUint) -> f64 {
    x.to_string().parse().unwrap_or(f64::INFINITY)
}

fn log10(x: &BigUint) -> f64 {
    to_f64(x).log10()
}

pub fn sweep_epsilon(n: usize, k: usize, grid: &[f64]) -> Result<Vec<SweepRow>> {
    if let Some(&bad) = grid.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        return Err(Error::InvalidSpec(format!("grid value {bad} not in (0,1)")));
    }
    grid.iter()
        .map(|&epsilon| {
            let design = bhattacharyya_bec_design(epsilon, k, n)?;
            let code = design.code;
            let s = find_block_structure(&code)?;
            let size = blta_size(&s);
            Ok(SweepRow {
                epsilon,
                aut_size_sci: sci_format(&size, 3),
                log10_aut_size: log10(&size),
                aut_size: size.to_string(),
                s: s.to_string(),
                i_min: join_rows(&code.generator_rows()?),
                selection_tie: design.boundary_tie,
            })
        })
        .collect()
}

/// One code of a census.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub i_min: String,
    pub num_generators: usize,
    pub s: String,
    pub aut_size: String,
    pub aut_size_sci: String,
}

/// Aggregate over all codes with the same `|I_min|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusGroup {
    pub num_generators: usize,
    pub count: usize,
    pub min_aut_size: String,
    pub avg_aut_size: f64,
    pub max_aut_size: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub rows: Vec<CensusRow>,
    pub groups: Vec<CensusGroup>,
}

pub fn enumerate(n: usize, k: usize) -> Result<Census> {
    let mut rows = Vec::new();
    let mut by_size: BTreeMap<usize, Vec<BigUint>> = BTreeMap::new();
    for code in enumerate_decreasing_codes(n, k)? {
        let gens = code.generator_rows()?;
        let s = find_block_structure(&code)?;
        let size = blta_size(&s);
        rows.push(CensusRow {
            i_min: join_rows(&gens),
            num_generators: gens.len(),
            s: s.to_string(),
            aut_size: size.to_string(),
            aut_size_sci: sci_format(&size, 3),
        });
        by_size.entry(gens.len()).or_default().push(size);
    }
    let groups = by_size
        .into_iter()
        .map(|(num_generators, sizes)| {
            let total: BigUint = sizes.iter().sum();
            let avg = to_f64(&total) / sizes.len() as f64;
            CensusGroup {
                num_generators,
                count: sizes.len(),
                min_aut_size: sizes.iter().min().expect("non-empty group").to_string(),
                avg_aut_size: avg,
                max_aut_size: sizes.iter().max().expect("non-empty group").to_string(),
            }
        })
        .collect();
    Ok(Census { n, k, rows, groups })
}

/// A sampled automorphism in printable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledAutomorphism {
    /// Row `i` of `A`, column 0 first.
    pub a: Vec<String>,
    /// Translation `b`, component 0 first.
    pub b: String,
    /// Position `j` is sent to `position_table[j]`.
    pub position_table: Vec<usize>,
}

impl From<&AffineAutomorphism> for SampledAutomorphism {
    fn from(aut: &AffineAutomorphism) -> Self {
        let n = aut.n();
        let bits = |w: u32| (0..n).map(|i| if w >> i & 1 == 1 { '1' } else { '0' }).collect::<String>();
        SampledAutomorphism {
            a: aut.matrix().rows().iter().map(|&r| bits(r)).collect(),
            b: bits(aut.translation()),
            position_table: aut.position_table(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub s: Vec<usize>,
    pub seed: u64,
    pub automorphisms: Vec<SampledAutomorphism>,
}

/// Draws `count` elements of `BLTA(s)` for the code's block structure.
pub fn sample(spec: &ConstructionSpec, count: usize, seed: u64) -> Result<SampleReport> {
    let code = spec.build()?;
    let s = find_block_structure(&code)?;
    Ok(sample_structure(&s, count, seed))
}

pub fn sample_structure(s: &BlockStructure, count: usize, seed: u64) -> SampleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let automorphisms = (0..count).map(|_| (&sample_blta(s, &mut rng)).into()).collect();
    SampleReport { s: s.sizes().to_vec(), seed, automorphisms }
}

/// Short identifier for CSV rows.
pub fn code_id(spec: &ConstructionSpec) -> String {
    match spec.kind {
        ConstructionKind::ReedMuller => format!("rm-{}-{}", spec.r.unwrap_or(0), spec.n),
        ConstructionKind::Generators => {
            let gens = spec.generators.as_deref().unwrap_or(&[]);
            format!("gen-{}-n{}", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("_"), spec.n)
        }
        ConstructionKind::BhattacharyyaBec => {
            format!("bec-{}-n{}-k{}", spec.epsilon.unwrap_or(f64::NAN), spec.n, spec.k.unwrap_or(0))
        }
    }
}

/// Everything `simulate` needs besides the code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulateConfig {
    pub decoders: Vec<DecoderSpec>,
    pub ebn0_db: Vec<f64>,
    pub kernel: Kernel,
    pub stop: StopRule,
    pub seed: u64,
    pub workers: usize,
}

/// Runs every decoder over the SNR grid; one result per (decoder, SNR).
pub fn simulate(spec: &ConstructionSpec, config: &SimulateConfig) -> Result<Vec<SimResult>> {
    let code = spec.build()?;
    if config.decoders.is_empty() {
        return Err(Error::InvalidDecoder("no decoders given".into()));
    }
    let id = code_id(spec);
    let mut out = Vec::new();
    for &decoder in &config.decoders {
        let sim = Simulation {
            code_id: id.clone(),
            decoder,
            kernel: config.kernel,
            ebn0_db: config.ebn0_db.clone(),
            stop: config.stop,
            seed: config.seed,
            workers: config.workers,
        };
        out.extend(sim.run(&code)?);
    }
    Ok(out)
}

/// Provenance record written next to every output file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub version: String,
    pub seed: Option<u64>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new<C: Serialize>(command: &str, config: &C, seed: Option<u64>) -> Result<Self> {
        let config = serde_json::to_value(config).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Ok(RunManifest {
            command: command.to_string(),
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            timestamp,
        })
    }

    pub fn write_json<W: Write>(&self, out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }
}

/// Serializes rows as CSV with a header.
pub fn write_csv_rows<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::InvalidSpec(e.to_string()))
}
