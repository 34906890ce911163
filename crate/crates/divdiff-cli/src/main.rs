use std::process::ExitCode;

use clap::Parser;
use divdiff_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::CasesFailed) => ExitCode::from(1),
        // Reader closed the pipe (e.g. `| head`); nothing left to report.
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
