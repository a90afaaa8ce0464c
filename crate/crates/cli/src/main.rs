use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use opaque_cli::commands::{run, Cli, CliError, EXIT_INPUT, EXIT_INVARIANT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT as u8) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli.command) {
        Ok(text) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::Invariant(report)) => {
            let _ = std::io::stdout().write_all(report.as_bytes());
            eprintln!("error: invariant violations found");
            ExitCode::from(EXIT_INVARIANT as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
