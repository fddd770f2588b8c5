use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use numdom::analyzer::{
    parse, render_reports, run, AnalysisConfig, Cfg, DomainKind, RunConfig, DEFAULT_WIDEN_DELAY,
};
use numdom::oracle::selftest;
use numdom::scalar::ScalarMode;

#[derive(Parser)]
#[command(
    name = "numdom",
    version,
    about = "Numerical invariants for a small imperative language"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariants at every labeled point and at the exit.
    Analyze {
        file: PathBuf,
        /// const, interval, congruence, zone, zone-congruence, zone-product or translated-eq
        #[arg(long, default_value = "zone-product")]
        domain: DomainKind,
        /// int or rat
        #[arg(long, default_value = "int")]
        scalar: ScalarMode,
        /// Only print this label (or `exit`).
        #[arg(long)]
        point: Option<String>,
        /// Loop-head updates that join before widening.
        #[arg(long, default_value_t = DEFAULT_WIDEN_DELAY)]
        widen_delay: usize,
        /// Print the control-flow graph first.
        #[arg(long)]
        dump_cfg: bool,
    },
    /// Run the randomized law suite against the brute-force oracles.
    Selftest {
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("numdom: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Analyze {
            file,
            domain,
            scalar,
            point,
            widen_delay,
            dump_cfg,
        } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", file.display())),
            };
            let program = match parse(&text) {
                Ok(p) => p,
                Err(e) => return fail(format!("{}:{e}", file.display())),
            };
            let mut out = String::new();
            if dump_cfg {
                out.push_str(&Cfg::build(&program, scalar).dump());
            }
            let config = RunConfig {
                domain,
                mode: scalar,
                analysis: AnalysisConfig {
                    widen_delay,
                    ..Default::default()
                },
            };
            let mut reports = match run(&program, &config) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            if let Some(p) = &point {
                reports.retain(|r| &r.point == p);
                if reports.is_empty() {
                    return fail(format!("no point labeled `{p}`"));
                }
            }
            out.push_str(&render_reports(&reports));
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            let target = point.as_deref().unwrap_or("exit");
            if reports.iter().any(|r| r.point == target && !r.reachable) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Selftest { cases, seed } => {
            let reports = selftest(cases, seed);
            for r in &reports {
                println!("{r}");
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            println!("{} laws, {failed} failed", reports.len());
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
