use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use qgl_cli::checks::{algebras_for, alg};
use qgl_cli::output::{aggregate_exit_code, to_json, write_filtration_csv};
use qgl_cli::{run, run_all, CheckId, Params, Profile};
use qgl_core::qfield::parse_rational;
use qgl_core::repth::filtration_table;

#[derive(Parser)]
#[command(name = "qgl", version, about = "Exact checks for quantized GL(N) algebras and the reflection equation algebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one check and print its JSON report.
    Run {
        #[arg(value_parser = parse_check)]
        check: CheckId,
        #[command(flatten)]
        common: Common,
        /// Write the filtration table as CSV (filtration only).
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        /// Print the rewriting systems the check uses to stderr.
        #[arg(long)]
        dump_presentation: bool,
    },
    /// Run a profile of checks and print a JSON array.
    RunAll {
        #[arg(long, default_value = "quick", value_parser = parse_profile)]
        profile: Profile,
        #[command(flatten)]
        common: Common,
        /// Worker threads; the report is the same for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List check ids.
    List,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Specialization point for numeric checks, as p/r.
    #[arg(long, value_parser = parse_q, default_value = "1/2")]
    q: BigRational,
    #[arg(long)]
    degree_cap: Option<usize>,
    /// Filtration thresholds M (repeatable).
    #[arg(long = "threshold", value_parser = parse_q)]
    thresholds: Vec<BigRational>,
    #[arg(long, default_value_t = 10)]
    window: i32,
    #[arg(long, default_value_t = Params::default().seed)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

impl Common {
    fn params(&self) -> Params {
        let mut p = Params { n: self.n, q0: self.q.clone(), degree_cap: self.degree_cap, window: self.window, seed: self.seed, ..Params::default() };
        if !self.thresholds.is_empty() {
            p.thresholds = self.thresholds.clone();
        }
        p
    }
}

fn parse_check(s: &str) -> Result<CheckId, String> {
    s.parse().map_err(|e: qgl_cli::checks::UnknownCheck| {
        let ids: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
        format!("{e}; expected one of {}", ids.join(", "))
    })
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse()
}

fn parse_q(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut f = File::create(path)?;
            writeln!(f, "{text}")
        }
        None => writeln!(io::stdout().lock(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::List => {
            for c in CheckId::ALL {
                println!("{c}");
            }
            0
        }
        Cmd::Run { check, common, csv, dump_presentation } => {
            let p = common.params();
            if dump_presentation {
                for &kind in algebras_for(check) {
                    match alg(&p, kind) {
                        Ok(h) => eprintln!("# {kind} N={} ({} rules)\n{}", p.n, h.pres.rule_count(), h.pres.dump()),
                        Err(e) => eprintln!("# {kind}: {e}"),
                    }
                }
            }
            let report = run(check, &p);
            if let Err(e) = emit(&common.out, &to_json(&report)) {
                eprintln!("qgl: {e}");
                return ExitCode::from(2);
            }
            if let (Some(path), CheckId::Filtration) = (&csv, check) {
                let labels: Vec<String> = p.thresholds.iter().map(|t| t.to_string()).collect();
                let res = filtration_table(p.n, &p.q0, p.window, &p.thresholds)
                    .map_err(|e| e.to_string())
                    .and_then(|rows| File::create(path).map_err(|e| e.to_string()).map(|f| (rows, f)))
                    .and_then(|(rows, f)| write_filtration_csv(f, &labels, &rows).map_err(|e| e.to_string()));
                if let Err(e) = res {
                    eprintln!("qgl: {e}");
                    return ExitCode::from(2);
                }
            }
            report.exit_code()
        }
        Cmd::RunAll { profile, common, jobs } => {
            let reports = run_all(profile, &common.params(), jobs);
            if let Err(e) = emit(&common.out, &to_json(&reports)) {
                eprintln!("qgl: {e}");
                return ExitCode::from(2);
            }
            aggregate_exit_code(&reports)
        }
    };
    ExitCode::from(code as u8)
}
