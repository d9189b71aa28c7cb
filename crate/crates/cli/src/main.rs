//! Command-line runner: load a JSON fixture, run verification suites,
//! report one line per check.
//!
//! Exit codes: 0 when every check passes (including expected failures
//! that did fail), 1 when a check fails, 2 for structural problems —
//! unreadable or invalid fixtures, unknown suites, or a suite that
//! cannot even be instantiated on the fixture.

use clap::{Parser, ValueEnum};
use modact_cli::{fixture, suites};
use modact::Sampler;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReportMode {
    /// Human-readable, grouped by suite, with a summary.
    Text,
    /// One `SUITE CHECK TUPLE PASS|FAIL` line per check, nothing else.
    Machine,
}

#[derive(Parser)]
#[command(
    name = "modact",
    version,
    about = "Exact coherence verification for module-category actions over finite-dimensional fixtures"
)]
struct Cli {
    /// Verification fixture (JSON).
    #[arg(long, value_name = "PATH")]
    fixture: Option<PathBuf>,

    /// Suite to run; repeatable. Defaults to every suite the fixture
    /// supports.
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,

    /// Seed for the deterministic tuple sampler.
    #[arg(long, default_value_t = 2024)]
    seed: u64,

    /// Sampled tuples per parametrized family of checks.
    #[arg(long, default_value_t = 3)]
    samples: usize,

    #[arg(long, value_enum, default_value_t = ReportMode::Text)]
    report: ReportMode,

    /// List the available suites and exit.
    #[arg(long)]
    list_suites: bool,
}

fn structural(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if cli.list_suites {
        for name in suites::SUITES {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }

    let Some(path) = &cli.fixture else {
        return structural("--fixture is required (or use --list-suites)");
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return structural(&format!("cannot read {}: {e}", path.display())),
    };
    let file = match fixture::parse(&text) {
        Ok(f) => f,
        Err(e) => return structural(&e),
    };
    let resolved = match fixture::resolve(&file) {
        Ok(r) => r,
        Err(e) => return structural(&format!("fixture {:?}: {e}", file.name)),
    };

    let chosen: Vec<&str> = if cli.suites.is_empty() {
        suites::SUITES
            .iter()
            .copied()
            .filter(|s| suites::supports(&resolved, s))
            .collect()
    } else {
        let mut selected = Vec::new();
        for name in &cli.suites {
            let Some(known) = suites::SUITES.iter().find(|s| *s == name) else {
                return structural(&format!(
                    "unknown suite {name:?}; available: {}",
                    suites::SUITES.join(", ")
                ));
            };
            if !suites::supports(&resolved, known) {
                return structural(&format!(
                    "suite {known:?} needs a fixture section that {:?} does not provide",
                    resolved.name
                ));
            }
            if !selected.contains(known) {
                selected.push(*known);
            }
        }
        selected
    };

    let mut lines = Vec::new();
    for suite in &chosen {
        // One deterministic stream per suite, derived from the base seed,
        // so adding a suite never changes another suite's tuples.
        let mut sampler = Sampler::new(resolved.field, cli.seed ^ fnv(suite));
        match suites::run(&resolved, suite, &mut sampler, cli.samples) {
            Ok(mut batch) => lines.append(&mut batch),
            Err(e) => return structural(&format!("suite {suite}: {e}")),
        }
    }

    // A check listed as an expected failure passes by failing.
    for l in &mut lines {
        if resolved.expected_failures.contains(&l.check) {
            l.check = format!("expect-fail:{}", l.check);
            l.pass = !l.pass;
        }
    }

    let failed = lines.iter().filter(|l| !l.pass).count();
    match cli.report {
        ReportMode::Machine => {
            for l in &lines {
                println!(
                    "{} {} {} {}",
                    l.suite,
                    l.check,
                    l.tuple,
                    if l.pass { "PASS" } else { "FAIL" }
                );
            }
        }
        ReportMode::Text => {
            println!(
                "fixture {}: dimension {} over {}",
                resolved.name,
                resolved.algebra.dim(),
                match resolved.field {
                    modact::Field::Rational => "the rationals".to_string(),
                    modact::Field::Prime(p) => format!("the field with {p} elements"),
                }
            );
            let mut current = "";
            for l in &lines {
                if l.suite != current {
                    current = l.suite;
                    println!("suite {current}");
                }
                println!(
                    "  {} {} {}",
                    if l.pass { "  ok" } else { "FAIL" },
                    l.check,
                    l.tuple
                );
            }
            println!(
                "summary: {} checks, {} failed (seed {}, {} samples)",
                lines.len(),
                failed,
                cli.seed,
                cli.samples
            );
        }
    }

    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

/// Tiny stable string hash for per-suite seed derivation.
fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
