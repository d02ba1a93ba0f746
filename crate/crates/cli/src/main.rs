use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dihedrant::dsl::parse_spec;
use dihedrant::report::{self, to_text};
use dihedrant::scan::{run_scan, ScanError};
use dihedrant::verify::{self, Suite, VerifyParams};
use dihedrant::{exit, exit_code_for};
use dihedrant_core::{Error, Limits};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "dihedrant", version)]
#[command(about = "Analyze inner-automorphic Cayley graphs on dihedral groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the report (or scan records) to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for scans (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Refinement nodes one automorphism search may visit.
    #[arg(long, global = true, default_value_t = Limits::default().node_cap)]
    node_cap: u64,

    /// Largest s-arc count an arc-transitivity test may handle.
    #[arg(long, global = true, default_value_t = Limits::default().arc_cap)]
    arc_cap: u128,

    /// Leave timings out of reports (they become null).
    #[arg(long, global = true)]
    no_timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants, classification, |Aut| and transitivity of a connection set.
    Classify {
        /// Connection-set spec, e.g. "n=12; S=family(thm14, p=3, pi=1)".
        spec: String,
    },
    /// BFS invariants and the case shape, without an automorphism search.
    Invariants { spec: String },
    /// The automorphism group: order, base, orbit lengths, generators.
    Aut { spec: String },
    /// Quotient on the orbits of the central rotation a^(n/2).
    Quotient { spec: String },
    /// Run a named verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Prime for the D_8p suites.
        #[arg(long, default_value_t = 3)]
        p: usize,
        /// Reflection class parity for the D_8p suites.
        #[arg(long, default_value_t = 1)]
        pi: u8,
        /// Order parameter n of D_2n (an upper bound for lemma35).
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Sweep every order up to n (cor12, cor13) or every inverse-closed set (prop21).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Evaluate every case (v) candidate for the given orders as JSONL.
    Scan {
        /// Even orders n, comma separated or repeated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DIHEDRANT_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::VERIFY_FAILED)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let limits = Limits {
        node_cap: cli.node_cap,
        arc_cap: cli.arc_cap,
    };
    let timings = !cli.no_timings;
    let parse = |spec: &str| parse_spec(spec).map_err(|e| Failure::Usage(e.to_string()));
    let (value, code) = match &cli.command {
        Command::Classify { spec } => (report::classify_report(&parse(spec)?, &limits, timings)?, exit::OK),
        Command::Invariants { spec } => (report::invariants_report(&parse(spec)?), exit::OK),
        Command::Aut { spec } => (report::aut_report(&parse(spec)?, &limits, timings)?, exit::OK),
        Command::Quotient { spec } => (report::quotient_report(&parse(spec)?)?, exit::OK),
        Command::Verify { suite, p, pi, n, exhaustive } => {
            let params = VerifyParams {
                p: *p,
                pi: *pi,
                n: *n,
                exhaustive: *exhaustive,
            };
            let mut timer = report::Timer::new(timings);
            let result = timer.time("verify", || verify::run(*suite, &params, &limits))?;
            let passed = result.all_passed();
            let checks: Vec<Value> = result
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            let value = json!({
                "theorem": suite.name(),
                "params": {"p": p, "pi": pi, "n": n, "exhaustive": exhaustive},
                "passed": passed,
                "checks": checks,
                "timings": timer.finish(),
            });
            (value, if passed { exit::OK } else { exit::VERIFY_FAILED })
        }
        Command::Scan { n } => return scan(cli, n, &limits),
    };
    emit(cli, &value)?;
    Ok(code)
}

fn emit(cli: &Cli, value: &Value) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("JSON values serialize")),
        Format::Text => to_text(value),
    };
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("<stdout>: {e}"))),
    }
}

fn scan(cli: &Cli, ns: &[usize], limits: &Limits) -> Result<u8, Failure> {
    if let Some(&odd) = ns.iter().find(|&&n| n % 2 == 1) {
        return Err(Failure::Usage(format!("scan needs even n, got {odd}")));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
    let summary = pool
        .install(|| run_scan(ns, cli.out.as_deref(), limits))
        .map_err(|e| match e {
            ScanError::Core(e) => Failure::Core(e),
            io => Failure::Io(io.to_string()),
        })?;
    log::info!("{summary:?}");
    eprintln!(
        "{} candidates, {} already recorded, {} written, {} arc-transitive, {} capped",
        summary.candidates, summary.skipped, summary.written, summary.arc_transitive, summary.errors
    );
    Ok(if summary.errors > 0 { exit::RESOURCE } else { exit::OK })
}
