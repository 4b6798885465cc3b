use std::process::ExitCode;

use clap::Parser;
use gifc_cli::{execute, Cli, SEED_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_seed = std::env::var(SEED_ENV).ok();
    match execute(&cli, env_seed.as_deref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gifc: {e}");
            ExitCode::from(e.code)
        }
    }
}
