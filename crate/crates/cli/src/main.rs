mod job;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use job::{Command, Inputs, JobConfig, JobError, Report, Status};

#[derive(Parser)]
#[command(name = "riesz-spectra", version, about = "Construct and certify exponential Riesz spectra for unions of intervals")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Smallest prime ordering the scaled fractional endpoints.
    FindPrime(Knobs),
    /// Hierarchical spectrum for a union of intervals in [0,1).
    ConstructHierarchy(Knobs),
    /// Spectrum of [0,1) ∪ ⋃[a,b) extending the integers.
    Complement(Knobs),
    /// Truncated Gram bounds of a spectrum on a set.
    Bounds(Knobs),
    /// Density and bound checks for a hierarchy plan.
    Verify(Knobs),
    /// Smallest singular value over square DFT minors.
    CheckChebotarev(Knobs),
    /// Empirical constant of the folding inequality.
    ProbeFolding(Knobs),
    /// Equidistribution of the endpoints along primes.
    Equidist(Knobs),
    /// Rerun the configuration echoed in a report and compare.
    Replay {
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct Knobs {
    #[arg(long)]
    intervals: Option<PathBuf>,
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[arg(long)]
    set: Option<PathBuf>,
    #[arg(long)]
    plan: Option<PathBuf>,
    #[arg(long = "N")]
    n: Option<u64>,
    #[arg(long, default_value_t = job::DEFAULT_PRIME_LIMIT)]
    prime_limit: u64,
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<f64>>,
    #[arg(long, default_value_t = job::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = job::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, env = "RS_PRECISION_BITS", default_value_t = riesz_spectra::interval::DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    all_subsets: bool,
    #[arg(long)]
    max_size: Option<usize>,
    /// Level shifts for probe-folding, a permutation of 1..=N.
    #[arg(long, value_delimiter = ',')]
    permutation: Option<Vec<u64>>,
}

fn read_json(path: &Path) -> Result<Value, JobError> {
    let text = std::fs::read_to_string(path).map_err(|e| JobError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| JobError::Input(format!("{}: {e}", path.display())))
}

fn build_config(command: Command, k: &Knobs) -> Result<JobConfig, JobError> {
    let mut paths = BTreeMap::new();
    let mut inputs = Inputs::default();
    let slots: [(&str, &Option<PathBuf>, &mut Option<Value>); 4] = [
        ("intervals", &k.intervals, &mut inputs.intervals),
        ("spectrum", &k.spectrum, &mut inputs.spectrum),
        ("set", &k.set, &mut inputs.set),
        ("plan", &k.plan, &mut inputs.plan),
    ];
    for (name, path, slot) in slots {
        if let Some(p) = path {
            *slot = Some(read_json(p)?);
            paths.insert(name.to_string(), p.display().to_string());
        }
    }
    Ok(JobConfig {
        command,
        paths,
        inputs,
        n: k.n,
        prime_limit: k.prime_limit,
        schedule: k.schedule.clone().unwrap_or_else(job::default_schedule),
        trials: k.trials,
        seed: k.seed,
        precision_bits: k.precision_bits,
        all_subsets: k.all_subsets,
        max_size: k.max_size,
        permutation: k.permutation.clone(),
    })
}

fn render(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), JobError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| JobError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn status_code(report: &Report) -> u8 {
    match report.status {
        Status::Pass => 0,
        Status::Fail => 1,
    }
}

fn main_inner(cli: Cli) -> Result<u8, JobError> {
    let (command, knobs) = match cli.command {
        Cmd::FindPrime(k) => (Command::FindPrime, k),
        Cmd::ConstructHierarchy(k) => (Command::ConstructHierarchy, k),
        Cmd::Complement(k) => (Command::Complement, k),
        Cmd::Bounds(k) => (Command::Bounds, k),
        Cmd::Verify(k) => (Command::Verify, k),
        Cmd::CheckChebotarev(k) => (Command::CheckChebotarev, k),
        Cmd::ProbeFolding(k) => (Command::ProbeFolding, k),
        Cmd::Equidist(k) => (Command::Equidist, k),
        Cmd::Replay { report, out } => {
            let original = std::fs::read_to_string(&report).map_err(|e| JobError::Input(format!("{}: {e}", report.display())))?;
            let parsed: Report =
                serde_json::from_str(&original).map_err(|e| JobError::Input(format!("{}: {e}", report.display())))?;
            let again = job::run(&parsed.config)?;
            let text = render(&again);
            emit(&text, out.as_deref())?;
            if text != original {
                eprintln!("replay differs from {}", report.display());
                return Ok(1);
            }
            return Ok(status_code(&again));
        }
    };
    let cfg = build_config(command, &knobs)?;
    let report = job::run(&cfg)?;
    emit(&render(&report), knobs.out.as_deref())?;
    if let Some(e) = &report.error {
        eprintln!("FAIL: {e}");
    }
    if command == Command::Verify {
        for line in job::verify_table(&report) {
            eprintln!("{line}");
        }
    }
    Ok(status_code(&report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
