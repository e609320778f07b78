mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ffwb_core::algebra::roots_in_ext;
use ffwb_core::anderson::{carlitz, carlitz_period, torsion_char};
use ffwb_core::gauss::{enumerate_characters, gauss_sum};
use ffwb_core::lseries::{goss_value, pellarin_trace, trace_tsv};
use ffwb_core::special::{agf, carlitz_omega};
use ffwb_core::verify::{self, Suite};
use ffwb_core::Error;
use serde_json::{json, Value};

use config::{Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "ffwb", version, about = "Carlitz and Anderson modules: special functions, Gauss–Thakur sums, L-values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an object and dump it as JSON.
    Compute {
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites and write a report.
    Verify {
        /// carlitz, different, gauss, diagram, lseries or all.
        suite: String,
        #[command(flatten)]
        common: Common,
        /// TSV of the Pellarin convergence trace.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    prec: Option<i64>,
    #[arg(long)]
    nt: Option<usize>,
    #[arg(long)]
    threshold: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Pi,
    Omega,
    GaussSum,
    Agf,
    Lvalue,
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Config(_) => 2,
        e if e.is_precision() => 3,
        _ => 1,
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn context_json(cfg: &RunConfig) -> Value {
    let c = &cfg.setup.ctx;
    json!({ "q": c.q(), "m": c.m(), "e": c.e(), "prec": c.prec(), "nt": cfg.setup.nt })
}

fn compute(target: Target, cfg: &RunConfig) -> Result<Value, Error> {
    let s = &cfg.setup;
    let c = &s.ctx;
    let pi = carlitz_period(c);
    let (name, value) = match target {
        Target::Pi => ("pi", pi.to_json()),
        Target::Omega => ("omega", carlitz_omega(c, s.nt).to_json()),
        Target::Agf => ("agf", agf(&carlitz(c), std::slice::from_ref(&pi), s.nt)?.to_json()),
        Target::GaussSum => {
            if s.primes.is_empty() {
                return Err(Error::Config("gauss-sum needs at least one prime".into()));
            }
            let m = carlitz(c);
            let mut out = Vec::new();
            for p in &s.primes {
                let psi = torsion_char(&m, std::slice::from_ref(&pi), p)?;
                for chi in enumerate_characters(p).into_iter().filter(|x| x.evaluative) {
                    let g = gauss_sum(&chi, &psi);
                    let leading: Vec<Value> = g
                        .slots()
                        .iter()
                        .map(|x| json!({ "valuation": x[0].valuation(), "coeff": x[0].leading().map(|l| c.fqm().code(l)) }))
                        .collect();
                    out.push(json!({
                        "prime": p.poly().to_string(),
                        "exponent": chi.exponent,
                        "sum": g.to_json(),
                        "leading": leading,
                    }));
                }
            }
            ("gauss-sum", Value::Array(out))
        }
        Target::Lvalue => {
            let mut out = Vec::new();
            for p in &s.primes {
                for (i, z) in roots_in_ext(p.poly(), c.fqm()).into_iter().enumerate() {
                    let v = goss_value(c, p, z, 1, cfg.lvalue_n)?;
                    out.push(json!({
                        "prime": p.poly().to_string(),
                        "root": i,
                        "zeta": c.fqm().code(z),
                        "n": 1,
                        "N": cfg.lvalue_n,
                        "value": v.to_json(),
                    }));
                }
            }
            ("lvalue", Value::Array(out))
        }
    };
    Ok(json!({ "target": name, "context": context_json(cfg), "value": value }))
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Compute { target, common } => {
            let over = Overrides { prec: common.prec, nt: common.nt, threshold: common.threshold, out: common.out, plot: None };
            let cfg = config::load(&common.config, &over)?;
            let v = compute(target, &cfg)?;
            write_out(cfg.report.as_deref(), &serde_json::to_string_pretty(&v).unwrap())?;
            Ok(0)
        }
        Command::Verify { suite, common, plot } => {
            let over = Overrides { prec: common.prec, nt: common.nt, threshold: common.threshold, out: common.out, plot };
            let mut cfg = config::load(&common.config, &over)?;
            cfg.suites = Suite::parse_list(&suite)?;
            let report = verify::run(&cfg.setup, &cfg.suites);
            eprint!("{}", report.to_tsv());
            eprintln!("{} passed, {} failed, {} errors", report.passed, report.failed, report.errors);
            write_out(cfg.report.as_deref(), &serde_json::to_string_pretty(&report).unwrap())?;
            if let Some(path) = &cfg.plot {
                let trace = if report.trace.is_empty() {
                    pellarin_trace(&cfg.setup.ctx, verify::PELLARIN_N, cfg.setup.nt)?
                } else {
                    report.trace.clone()
                };
                write_out(Some(path), &trace_tsv(&trace))?;
            }
            Ok(report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
