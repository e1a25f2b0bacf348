use std::process::ExitCode;

use clap::Parser;
use quadp3_cli::{init_threads, run, Cli, RunConfig, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| RunConfig::from_cli(&cli)).and_then(|cfg| run(&cfg));
    match result {
        Ok(outcome) => {
            for c in &outcome.report.checks {
                let tag = if c.status == Status::Pass { "PASS" } else { "FAIL" };
                println!("{tag} {}", c.name);
            }
            for n in &outcome.report.notes {
                println!("note: {n}");
            }
            for p in &outcome.written {
                eprintln!("wrote {}", p.display());
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
