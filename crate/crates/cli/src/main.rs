use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nodal_hilb::groebner::Budget;
use nodal_hilb::tautological::Theorem2Convention;
use nodal_hilb_cli::{emit_report, run_suite, sweep_csv, Module, OutputFormat, SuiteConfig, SweepSpec, BUDGET_ENV};

/// Exact verification suite for Hilbert schemes of points on nodal curve families.
#[derive(Parser)]
#[command(name = "nodal-hilb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every module's checks.
    VerifyAll(Common),
    /// Punctual chain, flat limits and the universal deformation.
    Punctual(Common),
    /// Chart model: flatness, reduction, smoothness, fibers.
    Charts(Common),
    /// Mixed Van der Monde syzygies and vanishing orders.
    Vdm(Common),
    /// Euler numbers; `--sweep g=0..8,m=1..10` prints the agreement table.
    Euler {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sweep: Option<SweepSpec>,
    },
    /// Tautological expansions and the closed-formula diff.
    Taut {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        compare_theorem2: Option<Convention>,
    },
}

#[derive(Args)]
struct Common {
    /// Largest m for m-indexed checks.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    m_max: u64,
    /// Run m-indexed checks for this m only.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seeded specializations per flatness check.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    spec_count: u64,
    /// Reduction-step cap per Gröbner computation.
    #[arg(long, env = BUDGET_ENV)]
    budget: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Report wall-clock times (output is then no longer byte-stable).
    #[arg(long)]
    timings: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Literal,
    Padded,
}

impl Common {
    fn config(&self, command: &str, modules: Vec<Module>) -> SuiteConfig {
        SuiteConfig {
            command: command.into(),
            m_max: self.m_max as usize,
            m: self.m.map(|m| m as usize),
            seed: self.seed,
            spec_count: self.spec_count as usize,
            budget: self.budget.map(Budget).unwrap_or_default(),
            output: if self.json { OutputFormat::Json } else { OutputFormat::Text },
            modules,
            timings: self.timings,
            threads: self.threads,
            ..SuiteConfig::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.command {
        Command::VerifyAll(c) => c.config("verify-all", Module::ALL.to_vec()),
        Command::Punctual(c) => c.config("punctual", vec![Module::Punctual]),
        Command::Charts(c) => c.config("charts", vec![Module::Charts]),
        Command::Vdm(c) => c.config("vdm", vec![Module::Vdm]),
        Command::Euler { common, sweep } => SuiteConfig { sweep: sweep.clone(), ..common.config("euler", vec![Module::Euler]) },
        Command::Taut { common, compare_theorem2 } => {
            let mut cfg = common.config("taut", vec![Module::Taut]);
            if let Some(c) = compare_theorem2 {
                cfg.theorem2 = vec![match c {
                    Convention::Literal => Theorem2Convention::Literal,
                    Convention::Padded => Theorem2Convention::Padded,
                }];
            }
            cfg
        }
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let report = run_suite(&config);
    let mut text = emit_report(&report, config.output);
    if config.output == OutputFormat::Text && config.sweep.is_some() {
        if let Some(csv) = sweep_csv(&report) {
            text.push('\n');
            text.push_str(&csv);
        }
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(report.exit_code() as u8)
}
