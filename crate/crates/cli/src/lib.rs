//! Verification suite driver: builds the check registry for a config, runs
//! it, and renders deterministic reports.

mod checks;

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use nodal_hilb::groebner::Budget;
use nodal_hilb::tautological::Theorem2Convention;
use serde::Serialize;
use serde_json::{json, Value};

pub use checks::{registry, CheckSpec, Env, Outcome};

pub const BUDGET_ENV: &str = "NODAL_HILB_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    Punctual,
    Charts,
    Vdm,
    Euler,
    Taut,
}

impl Module {
    pub const ALL: [Module; 5] = [Module::Punctual, Module::Charts, Module::Vdm, Module::Euler, Module::Taut];

    pub fn name(self) -> &'static str {
        match self {
            Module::Punctual => "punctual",
            Module::Charts => "charts",
            Module::Vdm => "vdm",
            Module::Euler => "euler",
            Module::Taut => "taut",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Parameter grid for the Euler sweep, e.g. `g=0..8,m=1..10,sigma=0;1;2;5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSpec {
    pub g: Vec<u32>,
    pub gb: Vec<u32>,
    pub m: Vec<u32>,
    pub sigma: Vec<u32>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec { g: (0..=8).collect(), gb: (0..=3).collect(), m: (1..=10).collect(), sigma: vec![0, 1, 2, 5] }
    }
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut spec = SweepSpec::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| format!("expected key=range, got `{part}`"))?;
            let values = parse_values(val)?;
            match key.trim() {
                "g" => spec.g = values,
                "gb" | "gB" => spec.gb = values,
                "m" => spec.m = values,
                "sigma" | "s" => spec.sigma = values,
                other => return Err(format!("unknown sweep key `{other}` (use g, gb, m, sigma)")),
            }
        }
        Ok(spec)
    }
}

fn parse_values(s: &str) -> Result<Vec<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad number `{t}`: {e}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok((lo..=hi).collect())
    } else {
        s.split(';').map(num).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub command: String,
    pub m_max: usize,
    /// Restrict the `m`-indexed checks to this single value.
    pub m: Option<usize>,
    pub seed: u64,
    pub spec_count: usize,
    pub budget: Budget,
    pub output: OutputFormat,
    pub modules: Vec<Module>,
    pub sweep: Option<SweepSpec>,
    pub theorem2: Vec<Theorem2Convention>,
    pub timings: bool,
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            command: "verify-all".into(),
            m_max: 4,
            m: None,
            seed: 0,
            spec_count: 20,
            budget: Budget::DEFAULT,
            output: OutputFormat::Text,
            modules: Module::ALL.to_vec(),
            sweep: None,
            theorem2: vec![Theorem2Convention::Literal, Theorem2Convention::Padded],
            timings: false,
            threads: 0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.m_max < 1 {
            return Err("--m-max must be at least 1".into());
        }
        if self.m == Some(0) {
            return Err("--m must be at least 1".into());
        }
        if self.spec_count < 1 {
            return Err("--spec-count must be at least 1".into());
        }
        Ok(())
    }

    /// The `m` values for checks that need `m ≥ lo`.
    pub fn ms(&self, lo: usize) -> Vec<usize> {
        match self.m {
            Some(m) if m >= lo => vec![m],
            Some(_) => Vec::new(),
            None => (lo..=self.m_max).collect(),
        }
    }

    pub fn echo(&self) -> Value {
        json!({
            "command": self.command,
            "m_max": self.m_max,
            "m": self.m,
            "seed": self.seed,
            "spec_count": self.spec_count,
            "budget": self.budget.0,
            "modules": self.modules.iter().map(|m| m.name()).collect::<Vec<_>>(),
            "sweep": self.sweep,
            "theorem2": self.theorem2.iter().map(|c| c.name()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub module: Module,
    pub params: Value,
    pub status: Status,
    pub details: Value,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: Value, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report { config, checks, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

fn run_one(spec: &CheckSpec, env: &Env, timings: bool) -> CheckRecord {
    let start = Instant::now();
    let (status, details) = match (spec.run)(env, &spec.id) {
        Ok(Outcome { pass, details }) => (if pass { Status::Pass } else { Status::Fail }, details),
        Err(e) if e.is_budget() => (Status::Skipped, json!({ "reason": e.to_string() })),
        Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
    };
    let elapsed_ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    CheckRecord { id: spec.id.clone(), module: spec.module, params: spec.params.clone(), status, details, elapsed_ms }
}

/// Run every enabled check; independent checks run on worker threads and
/// the report is assembled in id order.
pub fn run_suite(config: &SuiteConfig) -> Report {
    run_specs(config, registry(config))
}

/// Run an explicit list of checks under a config.
pub fn run_specs(config: &SuiteConfig, specs: Vec<CheckSpec>) -> Report {
    let env = Env {
        seed: config.seed,
        spec_count: config.spec_count,
        budget: config.budget,
        sweep: config.sweep.clone(),
    };
    let threads = match config.threads {
        0 => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        n => n,
    }
    .min(specs.len().max(1));
    let next = AtomicUsize::new(0);
    let records = Mutex::new(Vec::with_capacity(specs.len()));
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(spec) = specs.get(k) else { break };
                let rec = run_one(spec, &env, config.timings);
                records.lock().unwrap().push(rec);
            });
        }
    });
    Report::new(config.echo(), records.into_inner().unwrap())
}

pub fn emit_report(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let width = report.checks.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
            let mut s = String::new();
            let _ = writeln!(s, "{:<8} {:<width$} {:>9}", "status", "id", "ms");
            for c in &report.checks {
                let _ = writeln!(s, "{:<8} {:<width$} {:>9}", c.status.label(), c.id, c.elapsed_ms);
                if c.status != Status::Pass {
                    let _ = writeln!(s, "         {}", c.details);
                }
            }
            let Summary { pass, fail, skipped } = report.summary;
            let _ = writeln!(s, "\n{pass} passed, {fail} failed, {skipped} skipped");
            s
        }
    }
}

/// Sweep rows as CSV: `g,gB,m,sigma,closed,stratified,oracle,agree`.
pub fn sweep_csv(report: &Report) -> Option<String> {
    let rows = report.check("euler.sweep")?.details.get("rows")?.as_array()?;
    let mut s = String::from("g,gB,m,sigma,closed,stratified,oracle,agree\n");
    for r in rows {
        let f = |k: &str| r.get(k).map(|v| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            f("g"),
            f("gB"),
            f("m"),
            f("sigma"),
            f("closed"),
            f("stratified"),
            f("oracle"),
            f("agree")
        );
    }
    Some(s)
}
