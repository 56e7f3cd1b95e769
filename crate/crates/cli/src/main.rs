mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use qsobolev::Error;

use args::{Cli, Command};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SingularGram { .. } => 3,
        Error::InvalidContext(_) | Error::Parse(_) | Error::IndexOutOfRange { .. } | Error::ToleranceNotPositive => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Poly(a) => (commands::poly(a), &a.common.output),
        Command::Verify(a) => (commands::verify(a), &a.common.output),
        Command::PlotData(a) => (commands::plot_data(a), &a.common.output),
        Command::Jfrac(a) => (commands::jfrac(a), &a.common.output),
        Command::Table(a) => (commands::table(a), &a.common.output),
    };
    match result {
        Ok(out) => {
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", out.body),
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
