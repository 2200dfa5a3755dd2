use clap::Parser;
use solvops_cli::args::Cli;
use solvops_cli::error::{EXIT_THRESHOLD, EXIT_VALIDATION};
use std::process::ExitCode;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SOLVOPS_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SOLVOPS_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_VALIDATION as u8);
    }
    match solvops_cli::execute(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: threshold exceeded");
            ExitCode::from(EXIT_THRESHOLD as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
