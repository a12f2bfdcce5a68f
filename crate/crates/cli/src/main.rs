//! `polar-aut`: analyze decreasing monomial codes, enumerate them, sample
//! their automorphisms and simulate SC / SCL / Aut-SC decoding.
//!
//! Exit status: 0 on success, 2 for an invalid spec or argument, 3 when a
//! request exceeds a capability limit (e.g. enumeration beyond n = 7), 1 for
//! I/O failures.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use polar_aut::channel::{write_csv, DecoderSpec, StopRule};
use polar_aut::codec::Kernel;
use polar_aut::construction::ConstructionSpec;
use polar_aut::harness::{self, RunManifest, SimulateConfig};
use polar_aut::Error;

#[derive(Parser)]
#[command(name = "polar-aut", version, about = "Automorphism groups and ensemble decoding of polar codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Block structure, |BLTA| and I_min of one code (JSON).
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// |BLTA| of Bhattacharyya designs over a grid of BEC erasure probabilities (CSV).
    SweepEpsilon {
        /// Bhattacharyya spec supplying n and K; overridden by --n/--k.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated ε values; default 0.01..=0.50 in steps of 0.01.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        #[command(flatten)]
        out: OutArg,
    },
    /// All decreasing codes of dimension K with their |BLTA| (CSV), plus a
    /// summary grouped by |I_min|.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Where to write the summary CSV; defaults to <out>.summary.csv, or stderr.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Uniform samples from BLTA(s) for the code's block structure (JSON).
    Sample {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of automorphisms to draw.
        #[arg(long, default_value_t = 8)]
        ensemble: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Monte Carlo BLER over BPSK/AWGN (CSV).
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct OutArg {
    /// Output file; a `<out>.manifest.json` is written next to it. Default: stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Comma-separated Eb/N0 points in dB.
    #[arg(long, value_delimiter = ',', required = true)]
    ebn0: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 8)]
    list_size: usize,
    #[arg(long, default_value_t = 8)]
    ensemble: usize,
    #[arg(long, default_value = "exact")]
    kernel: Kernel,
    #[arg(long, default_value_t = 1_000_000)]
    max_frames: u64,
    #[arg(long, default_value_t = 100)]
    target_errors: u64,
    /// Decoder labels such as `sc,scl-8,aut-8-sc`; default uses --list-size and --ensemble.
    #[arg(long, value_delimiter = ',')]
    decoders: Option<Vec<String>>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_spec(path: &Path) -> Result<ConstructionSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidSpec(format!("cannot read {}: {e}", path.display())))?;
    Ok(ConstructionSpec::from_json(&text)?)
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| Failure::Io(p.to_path_buf(), e))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_manifest<C: Serialize>(out: &OutArg, command: &str, config: &C, seed: Option<u64>) -> Result<(), Failure> {
    let Some(path) = &out.out else { return Ok(()) };
    let manifest = RunManifest::new(command, config, seed)?;
    let mpath = with_suffix(path, ".manifest.json");
    let f = File::create(&mpath).map_err(|e| Failure::Io(mpath.clone(), e))?;
    manifest.write_json(BufWriter::new(f)).map_err(|e| Failure::Io(mpath, e))
}

fn write_json<T: Serialize>(out: &OutArg, value: &T) -> Result<(), Failure> {
    let path = out.out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    let mut w = open_out(out.out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Failure::Io(path.clone(), e.into()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| Failure::Io(path, e))
}

#[derive(Serialize)]
struct SweepConfig {
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    grid: Vec<f64>,
}

#[derive(Serialize)]
struct EnumerateConfig {
    n: usize,
    #[serde(rename = "K")]
    k: usize,
}

#[derive(Serialize)]
struct SampleConfig<'a> {
    spec: &'a ConstructionSpec,
    count: usize,
}

#[derive(Serialize)]
struct SimulateManifest<'a> {
    spec: &'a ConstructionSpec,
    #[serde(flatten)]
    config: &'a SimulateConfig,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { spec, out } => {
            let spec = read_spec(&spec)?;
            let report = harness::analyze(&spec)?;
            write_json(&out, &report)?;
            write_manifest(&out, "analyze", &spec, None)
        }
        Command::SweepEpsilon { spec, n, k, grid, out } => {
            let from_spec = spec.as_deref().map(read_spec).transpose()?;
            let n = n.or(from_spec.as_ref().map(|s| s.n));
            let k = k.or(from_spec.as_ref().and_then(|s| s.k));
            let (Some(n), Some(k)) = (n, k) else {
                return Err(Error::InvalidSpec("sweep-epsilon needs n and K (--n/--k or --spec)".into()).into());
            };
            let grid = grid.unwrap_or_else(harness::default_epsilon_grid);
            let rows = harness::sweep_epsilon(n, k, &grid)?;
            harness::write_csv_rows(&rows, open_out(out.out.as_deref())?)?;
            write_manifest(&out, "sweep-epsilon", &SweepConfig { n, k, grid }, None)
        }
        Command::Enumerate { n, k, summary, out } => {
            let census = harness::enumerate(n, k)?;
            harness::write_csv_rows(&census.rows, open_out(out.out.as_deref())?)?;
            let summary = summary.or_else(|| out.out.as_deref().map(|p| with_suffix(p, ".summary.csv")));
            match summary {
                Some(p) => harness::write_csv_rows(&census.groups, open_out(Some(&p))?)?,
                None => harness::write_csv_rows(&census.groups, io::stderr().lock())?,
            }
            write_manifest(&out, "enumerate", &EnumerateConfig { n, k }, None)
        }
        Command::Sample { spec, seed, ensemble, out } => {
            let spec = read_spec(&spec)?;
            let report = harness::sample(&spec, ensemble, seed)?;
            write_json(&out, &report)?;
            write_manifest(&out, "sample", &SampleConfig { spec: &spec, count: ensemble }, Some(seed))
        }
        Command::Simulate(args) => {
            let spec = read_spec(&args.spec)?;
            let labels = args.decoders.clone().unwrap_or_else(|| {
                vec!["sc".into(), format!("scl-{}", args.list_size), format!("aut-{}-sc", args.ensemble)]
            });
            let decoders = labels.iter().map(|l| l.parse::<DecoderSpec>()).collect::<Result<Vec<_>, _>>()?;
            let config = SimulateConfig {
                decoders,
                ebn0_db: args.ebn0.clone(),
                kernel: args.kernel,
                stop: StopRule { max_frames: args.max_frames, target_errors: args.target_errors },
                seed: args.seed,
                workers: args.workers,
            };
            let results = harness::simulate(&spec, &config)?;
            write_csv(&results, open_out(args.out.out.as_deref())?)?;
            write_manifest(&args.out, "simulate", &SimulateManifest { spec: &spec, config: &config }, Some(args.seed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(harness::exit_code(&e) as u8)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(1)
        }
    }
}
