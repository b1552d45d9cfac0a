use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qgem_cli::{emit, execute, Cli, Command, Destination, RunConfig, OUTPUT_DIR_ENV};

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let env_dir = std::env::var_os(OUTPUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let config = RunConfig::load(cli.config.as_deref(), &cli.overrides(env_dir))?;
    let outcome = execute(cli.command, &config)?;
    let mut stdout = std::io::stdout().lock();
    if let Some(summary) = &outcome.summary {
        stdout.write_all(summary.as_bytes())?;
    }
    match emit(cli.command, &outcome, &config)? {
        // the check summary already says everything on the terminal
        Destination::Stdout(_) if cli.command == Command::Check && cli.format.is_none() => {}
        Destination::Stdout(text) => stdout.write_all(text.as_bytes())?,
        Destination::File(path) => log::info!("wrote {}", path.display()),
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
