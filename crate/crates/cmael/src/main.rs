use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = cmael::app::Cli::parse();
    ExitCode::from(cmael::app::run(cli))
}
