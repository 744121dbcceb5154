use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linkclose::RingContext;
use linkclose_cli::{run_script, verify_suite, SuiteParams, SuiteReport, SUITES};

#[derive(Parser)]
#[command(name = "alg", version, about = "Linkage, corner powers and tight closure over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script file.
    Run {
        file: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Built-in ring name or `char <p> vars <v,...> [mod <poly>]`.
        #[arg(long, default_value = "fermat2")]
        ring: String,
        /// Characteristic; with --vars (and optionally --mod) replaces --ring.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, requires = "p")]
        vars: Option<String>,
        #[arg(long = "mod", requires = "vars")]
        relation: Option<String>,
        /// Comma-separated generators overriding the suite's ideals.
        #[arg(long)]
        ideal: Option<String>,
        /// Largest Frobenius exponent e (q = p^e).
        #[arg(long, default_value_t = 3)]
        qmax: u32,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        tmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

const INPUT_ERROR: u8 = 2;

fn finish(report: &SuiteReport, json: Option<PathBuf>) -> ExitCode {
    for c in &report.checks {
        println!("{} {}: {}", c.status.label(), c.name, c.details);
    }
    println!("{}", report.summary());
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, report.to_json() + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(INPUT_ERROR);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(INPUT_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(INPUT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Run { file, json, seed } => {
            let source = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => return input_error(format!("{}: {e}", file.display())),
            };
            match run_script(&source, seed) {
                Ok(mut out) => {
                    out.report.param("file", file.display().to_string());
                    for line in &out.output {
                        println!("{line}");
                    }
                    finish(&out.report, json)
                }
                Err(e) => input_error(format!("{}: {e}", file.display())),
            }
        }
        Command::Verify {
            suite,
            ring,
            p,
            vars,
            relation,
            ideal,
            qmax,
            depth,
            samples,
            tmax,
            seed,
            json,
        } => {
            let spec = match (p, vars) {
                (Some(p), Some(vars)) => {
                    let mut s = format!("char {p} vars {vars}");
                    if let Some(f) = relation {
                        s.push_str(&format!(" mod {f}"));
                    }
                    s
                }
                (Some(_), None) => return input_error("--p needs --vars"),
                _ => ring,
            };
            let ring = match RingContext::from_spec(&spec) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            let params = SuiteParams { ring, ideal, e_max: qmax, depth, samples, tmax, seed };
            match verify_suite(&suite, &params) {
                Ok(report) => finish(&report, json),
                Err(e) => input_error(e),
            }
        }
    }
}
