use std::process::ExitCode;

use clap::Parser;

use photonstat::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match photonstat::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("photonstat: error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
