use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use riesz_spectra::arith::{prime_orbit_fraction, weyl_discrepancy, weyl_sum, find_ordering_prime_with, PrimeSearchOptions, DISCREPANCY_CELL_BUDGET};
use riesz_spectra::assembly::{subset_spectrum, theorem1_construct_with, theorem2_complement_with, Theorem1Plan, Theorem2Options};
use riesz_spectra::dft_minor::chebotarev_check;
use riesz_spectra::interval::{Endpoint, IntervalSet};
use riesz_spectra::json::IntervalSetJson;
use riesz_spectra::spectrum::{AvdoninGenerator, Spectrum};
use riesz_spectra::verify::{density_check, folding_probe, riesz_bounds_estimate, Verdict, DEFAULT_SCHEDULE};
use riesz_spectra::Error;

pub const SCHEMA: &str = "riesz-spectra/1";
pub const DEFAULT_PRIME_LIMIT: u64 = 100_000;
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_SEED: u64 = 42;
pub const CHEBOTAREV_FLOOR: f64 = 1e-8;
pub const EQUIDIST_THRESHOLD: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    FindPrime,
    ConstructHierarchy,
    Complement,
    Bounds,
    Verify,
    CheckChebotarev,
    ProbeFolding,
    Equidist,
}

/// Input documents embedded verbatim so a report can be replayed without its files.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: Command,
    pub paths: BTreeMap<String, String>,
    pub inputs: Inputs,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub prime_limit: u64,
    pub schedule: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub precision_bits: u32,
    pub all_subsets: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub config: JobConfig,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
}

/// Failure classes keyed to exit codes.
#[derive(Debug)]
pub enum JobError {
    Input(String),
    Resource(String),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Input(_) => 2,
            JobError::Resource(_) => 3,
        }
    }
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JobError::Input(m) | JobError::Resource(m) => f.write_str(m),
        }
    }
}

enum Outcome {
    Done(Status, Value),
    Failed(String),
}

fn classify(e: Error) -> Result<Outcome, JobError> {
    match e {
        Error::ResourceLimit(m) => Err(JobError::Resource(m)),
        Error::InvalidInput(_)
        | Error::Parse(_)
        | Error::AmbiguousEndpoint(_)
        | Error::InvalidSubset(_)
        | Error::EmptySubset
        | Error::NotPrime(_)
        | Error::NotPermutation(_)
        | Error::IncompatibleShift { .. }
        | Error::EmptyWindow(_) => Err(JobError::Input(e.to_string())),
        other => Ok(Outcome::Failed(other.to_string())),
    }
}

fn need<'a>(v: &'a Option<Value>, flag: &str) -> Result<&'a Value, JobError> {
    v.as_ref().ok_or_else(|| JobError::Input(format!("missing --{flag}")))
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T, JobError> {
    T::deserialize(v).map_err(|e| JobError::Input(format!("{what}: {e}")))
}

fn endpoints(cfg: &JobConfig) -> Result<(Vec<Endpoint>, Vec<Endpoint>), JobError> {
    let doc: IntervalSetJson = decode(need(&cfg.inputs.intervals, "intervals")?, "intervals")?;
    let pairs = doc.pairs(cfg.precision_bits).map_err(|e| JobError::Input(format!("intervals: {e}")))?;
    if pairs.is_empty() {
        return Err(JobError::Input("intervals: no intervals given".into()));
    }
    Ok(pairs.into_iter().unzip())
}

/// Accepts either a bare plan or a report produced by `construct-hierarchy`.
fn load_plan(cfg: &JobConfig) -> Result<Theorem1Plan, JobError> {
    let v = need(&cfg.inputs.plan, "plan")?;
    let body = if v.get("schema").is_some() { v.get("result").unwrap_or(&Value::Null) } else { v };
    decode(body, "plan")
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

pub fn validate(cfg: &JobConfig) -> Result<(), JobError> {
    let bad = |m: &str| Err(JobError::Input(m.to_string()));
    if !(2..=1_000_000_000).contains(&cfg.prime_limit) {
        return bad("--prime-limit must lie in 2..=1e9");
    }
    if !(32..=4096).contains(&cfg.precision_bits) {
        return bad("--precision-bits must lie in 32..=4096");
    }
    if cfg.trials == 0 || cfg.trials > 100_000 {
        return bad("--trials must lie in 1..=100000");
    }
    if cfg.schedule.is_empty() || cfg.schedule.iter().any(|t| !(t.is_finite() && *t > 0.0)) || cfg.schedule.windows(2).any(|w| w[0] >= w[1]) {
        return bad("--schedule must be a strictly increasing list of positive windows");
    }
    if let Some(n) = cfg.n {
        if !(1..=1_000_000).contains(&n) {
            return bad("--N must lie in 1..=1e6");
        }
    }
    Ok(())
}

pub fn run(cfg: &JobConfig) -> Result<Report, JobError> {
    validate(cfg)?;
    let outcome = match execute(cfg) {
        Ok(o) => o,
        Err(Fail::Job(e)) => return Err(e),
        Err(Fail::Core(e)) => classify(e)?,
    };
    let (status, result, error) = match outcome {
        Outcome::Done(s, v) => (s, v, None),
        Outcome::Failed(m) => (Status::Fail, Value::Null, Some(m)),
    };
    Ok(Report { schema: SCHEMA.into(), version: env!("CARGO_PKG_VERSION").into(), config: cfg.clone(), status, error, result })
}

enum Fail {
    Job(JobError),
    Core(Error),
}

impl From<JobError> for Fail {
    fn from(e: JobError) -> Self {
        Fail::Job(e)
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn execute(cfg: &JobConfig) -> Result<Outcome, Fail> {
    let opts = PrimeSearchOptions::new(cfg.prime_limit);
    match cfg.command {
        Command::FindPrime => {
            let (a, b) = endpoints(cfg)?;
            let res = find_ordering_prime_with(&a, &b, &opts)?;
            let witness: Vec<Value> = res.ordering_witness.iter().map(to_value).collect();
            Ok(Outcome::Done(Status::Pass, json!({ "N": res.n, "candidates_scanned": res.candidates_scanned, "ordering_witness": witness })))
        }
        Command::ConstructHierarchy => {
            let (a, b) = endpoints(cfg)?;
            let plan = theorem1_construct_with(&a, &b, &opts, &AvdoninGenerator::default())?;
            plan.check_ledger(512.0)?;
            Ok(Outcome::Done(Status::Pass, to_value(&plan)))
        }
        Command::Complement => {
            let (a, b) = endpoints(cfg)?;
            let n = cfg.n.ok_or_else(|| JobError::Input("missing --N".into()))?;
            let t2 = Theorem2Options { prime_limit: cfg.prime_limit };
            let res = theorem2_complement_with(n, &a, &b, &t2, &AvdoninGenerator::default())?;
            Ok(Outcome::Done(Status::Pass, to_value(&res)))
        }
        Command::Bounds => {
            let spectrum: Spectrum = decode(need(&cfg.inputs.spectrum, "spectrum")?, "spectrum")?;
            let set: IntervalSet = decode(need(&cfg.inputs.set, "set")?, "set")?;
            let rep = riesz_bounds_estimate(&spectrum, &set, &cfg.schedule)?;
            Ok(Outcome::Done(pass_if(rep.verdict == Verdict::Pass), to_value(&rep)))
        }
        Command::Verify => {
            let plan = load_plan(cfg)?;
            let l = plan.num_intervals();
            let subsets: Vec<Vec<usize>> = if cfg.all_subsets {
                (1u32..(1 << l)).map(|mask| (1..=l).filter(|&i| mask & (1 << (i - 1)) != 0).collect()).collect()
            } else {
                vec![(1..=l).collect()]
            };
            let mut rows = Vec::new();
            let mut all = true;
            for j in subsets {
                let sub = subset_spectrum(&plan, &j)?;
                let dens = density_check(&sub.lambda_j, &sub.s_j, &cfg.schedule)?;
                let rep = riesz_bounds_estimate(&sub.lambda_j, &sub.s_j, &cfg.schedule)?;
                let ok = dens.pass && rep.verdict == Verdict::Pass;
                all &= ok;
                rows.push(json!({
                    "J": j,
                    "verdict": pass_if(ok),
                    "density": dens,
                    "bounds": rep,
                }));
            }
            Ok(Outcome::Done(pass_if(all), json!({ "N": plan.n, "rows": rows })))
        }
        Command::CheckChebotarev => {
            let n = cfg.n.ok_or_else(|| JobError::Input("missing --N".into()))?;
            let max = cfg.max_size.unwrap_or(n as usize);
            let rep = chebotarev_check(n, max)?;
            Ok(Outcome::Done(pass_if(rep.worst_sigma > CHEBOTAREV_FLOOR), to_value(&rep)))
        }
        Command::ProbeFolding => {
            let plan = load_plan(cfg)?;
            let levels: Vec<Spectrum> = plan.per_level.iter().map(|l| l.spectrum.clone()).collect();
            let j = cfg.permutation.clone().unwrap_or_else(|| (1..=plan.n).collect());
            let rep = folding_probe(plan.n, &plan.s, &levels, &j, cfg.trials, cfg.seed)?;
            let ok = rep.empirical_c > 0.0 && !rep.truncation_warning;
            Ok(Outcome::Done(pass_if(ok), to_value(&rep)))
        }
        Command::Equidist => {
            let (a, b) = endpoints(cfg)?;
            let values: Vec<&Endpoint> = a.iter().chain(b.iter()).collect();
            let dirs: Vec<f64> = values.iter().map(|e| e.to_f64()).collect();
            let d = dirs.len() as u32;
            let boxes = ((DISCREPANCY_CELL_BUDGET as f64).powf(1.0 / d as f64).floor() as usize).clamp(1, 200);
            let joint = weyl_discrepancy(&dirs, cfg.prime_limit, boxes)?;
            let half = Endpoint::ratio(1, 2);
            let mut per_value = Vec::new();
            for (e, x) in values.iter().zip(&dirs) {
                per_value.push(json!({
                    "value": x,
                    "fraction_lower_half": prime_orbit_fraction(e, cfg.prime_limit, &Endpoint::zero(), &half)?,
                    "weyl_sum_h1": weyl_sum(*x, 1, cfg.prime_limit)?,
                }));
            }
            Ok(Outcome::Done(
                pass_if(joint < EQUIDIST_THRESHOLD),
                json!({ "boxes": boxes, "discrepancy": joint, "threshold": EQUIDIST_THRESHOLD, "per_value": per_value }),
            ))
        }
    }
}

pub fn default_schedule() -> Vec<f64> {
    DEFAULT_SCHEDULE.to_vec()
}

/// One line per verified subset.
pub fn verify_table(report: &Report) -> Vec<String> {
    let rows = report.result.get("rows").and_then(Value::as_array).cloned().unwrap_or_default();
    rows.iter()
        .map(|r| {
            let j = r["J"].as_array().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).unwrap_or_default();
            format!(
                "J={{{j}}}\t{}\tA={:.6}\tB={:.6}\tdensity={}",
                r["verdict"].as_str().unwrap_or("?"),
                r["bounds"]["lower_est"].as_f64().unwrap_or(f64::NAN),
                r["bounds"]["upper_est"].as_f64().unwrap_or(f64::NAN),
                if r["density"]["pass"].as_bool().unwrap_or(false) { "PASS" } else { "FAIL" },
            )
        })
        .collect()
}
