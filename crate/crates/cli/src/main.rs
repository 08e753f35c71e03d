use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use paraq::harness::{self, RunConfig, SigmaChoice, SpotQ, StarChoice, Suite};
use paraq::Family;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Parafermi,
    Parabose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
struct SuiteList(Vec<Suite>);

/// Exact verification of the deformed parastatistics algebras.
#[derive(Debug, Parser)]
#[command(name = "paraq", version)]
struct Args {
    #[arg(long, value_enum, default_value = "parafermi")]
    family: FamilyArg,
    /// Number of modes n.
    #[arg(long, default_value_t = 2)]
    modes: usize,
    /// Order p of the Green ansatz.
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// Occupation cutoff of the bose representation.
    #[arg(long, default_value_t = 6)]
    cutoff: u32,
    /// classical, relations, hopf, green, module-l or all; comma separated.
    #[arg(long, default_value = "all", value_parser = |s: &str| Suite::parse_list(s).map(SuiteList))]
    suite: SuiteList,
    #[arg(long, default_value = "auto", value_parser = ["plus", "minus", "auto"])]
    sigma: String,
    #[arg(long, default_value = "auto", value_parser = ["plain", "graded", "auto"])]
    star: String,
    /// Rational q with a rational square root, for spot evaluation of the relations.
    #[arg(long, value_parser = |s: &str| s.parse::<SpotQ>())]
    q: Option<SpotQ>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; falls back to PARAQ_JOBS, then 1.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, hide = true)]
    corrupt_catalog: bool,
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let jobs = match args.jobs {
        Some(j) => j,
        None => match std::env::var("PARAQ_JOBS") {
            Ok(v) => match v.trim().parse() {
                Ok(j) => j,
                Err(_) => return usage(&format!("PARAQ_JOBS is not a positive integer: `{v}`")),
            },
            Err(_) => 1,
        },
    };
    let config = RunConfig {
        family: match args.family {
            FamilyArg::Parafermi => Family::Parafermi,
            FamilyArg::Parabose => Family::Parabose,
        },
        modes: args.modes,
        order: args.order,
        cutoff: args.cutoff,
        suites: args.suite.0,
        sigma: args.sigma.parse::<SigmaChoice>().expect("validated by clap"),
        star: args.star.parse::<StarChoice>().expect("validated by clap"),
        q: args.q,
        jobs,
        corrupt_catalog: args.corrupt_catalog,
    };
    if let Err(e) = config.validate() {
        return usage(&e);
    }
    let out = match harness::run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    for (suite, t) in &out.timings {
        eprintln!("{suite}: {:.3}s", t.as_secs_f64());
    }
    let report = &out.report;
    for c in report.checks.iter().filter(|c| !c.passed()) {
        eprintln!("FAIL {} {} {:?}", c.suite, c.name, c.indices);
    }
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
