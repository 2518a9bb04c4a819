use std::process::ExitCode;

use clap::Parser;
use pircon::cli::{run, Cli, ErrorJson};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) if outcome.passed => ExitCode::SUCCESS,
        Ok(outcome) => {
            eprintln!("verification failed; see {}", outcome.root.display());
            ExitCode::from(1)
        }
        Err(e) => {
            let json = serde_json::to_string(&ErrorJson::from(&e)).expect("error json");
            eprintln!("{json}");
            ExitCode::from(2)
        }
    }
}
