//! Command-line front end: turns a declarative config into CSV / JSON tables.
//!
//! All physics lives in `qgem-core`; this crate only builds grids, calls the
//! core operations and formats what comes back.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Parser;

pub use commands::{execute, Command, Outcome};
pub use config::{Format, Overrides, RunConfig, OUTPUT_DIR_ENV};
pub use report::Report;

#[derive(Debug, Parser)]
#[command(name = "qgem", version, about = "Design numbers for plate-shielded gravitational entanglement experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long, short, global = true)]
    pub config: Option<PathBuf>,
    /// Override a config key, e.g. `--set table1.rate=0.02`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub set: Vec<String>,
    /// Same as `output.format`.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Same as `em.strict = true`: out-of-range far-field formulas are errors.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Same as `output.dir`; beats the QGEM_OUTPUT_DIR environment variable.
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
}

impl Cli {
    /// Overrides from flags, with `env_output_dir` below `--output-dir`.
    pub fn overrides(&self, env_output_dir: Option<PathBuf>) -> Overrides {
        Overrides {
            set: self.set.clone(),
            format: self.format,
            strict: self.strict,
            output_dir: self.output_dir.clone().or(env_output_dir),
        }
    }
}

/// Where the rendered report went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout(String),
    File(PathBuf),
}

/// Renders `outcome` and writes it to `output.dir`, if configured.
pub fn emit(command: Command, outcome: &Outcome, config: &RunConfig) -> Result<Destination> {
    let format = config.output.format;
    let text = outcome.report.render(format);
    match &config.output.dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(format!("{}.{}", command.name(), format.extension()));
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Destination::File(path))
        }
        None => Ok(Destination::Stdout(text)),
    }
}
