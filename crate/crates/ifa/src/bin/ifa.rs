use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use ifa::cli::{dispatch, Cli};
use ifa::CliError;

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let result = dispatch(&cli, &mut stdout, &mut stderr).and_then(|()| Ok(stdout.flush()?));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => {
                    let _ = writeln!(stderr, "error: {msg}\n\n{}", Cli::command().render_usage());
                }
                _ => {
                    let _ = writeln!(stderr, "error: kind={} message={:?}", e.kind(), e.to_string());
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
