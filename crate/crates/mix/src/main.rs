use std::process::ExitCode;

use clap::Parser;
use ntr_mix::Cli;

fn main() -> ExitCode {
    match ntr_mix::execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ntr-mix: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
