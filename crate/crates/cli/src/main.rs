mod cli;
mod commands;
mod render;

use clap::error::ErrorKind;
use clap::Parser;
use cli::{Cli, Command, CommonArgs};
use commands::{CliError, Report, EXIT_USAGE};
use std::process::ExitCode;

fn common(cmd: &Command) -> &CommonArgs {
    match cmd {
        Command::Exact(a) => &a.common,
        Command::Enumerate(a) => &a.circuit.common,
        Command::Sample(a) => &a.circuit.common,
        Command::GhzTable(a) => a,
        Command::Verify(a) => &a.common,
    }
}

fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Exact(a) => commands::cmd_exact(a),
        Command::Enumerate(a) => commands::cmd_enumerate(a),
        Command::Sample(a) => commands::cmd_sample(a),
        Command::GhzTable(a) => commands::cmd_ghz_table(a),
        Command::Verify(a) => commands::cmd_verify(a),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let opts = common(&cli.command);
    let report = match opts.workers {
        Some(0) => return Err(CliError::usage("--workers must be at least 1")),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::usage(format!("cannot start {w} workers: {e}")))?
            .install(|| dispatch(&cli.command))?,
        None => dispatch(&cli.command)?,
    };
    match &opts.output {
        Some(path) => std::fs::write(path, &report.text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", report.text),
    }
    Ok(report.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
