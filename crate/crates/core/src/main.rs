use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use coherence::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli.command);
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(report.code as u8)
}
