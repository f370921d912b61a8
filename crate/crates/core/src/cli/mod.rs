//! Command-line front end.
//!
//! Exit status: [`EXIT_OK`] on success, [`EXIT_CONFIG`] for invalid
//! configuration or usage, [`EXIT_CHECK_FAILED`] when `verify` or
//! `hypotheses` finds a failing check, [`EXIT_IO`] when output cannot be
//! written.

pub mod commands;
pub mod config;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::model::{Param, RegimeInterpretation};
use crate::statics::GridRegion;
use commands::{SweepAxis, SweepSpec};
use config::{parse_assignment, parse_config_text, ConfigError, OutputFormat, RunConfig};
use format::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "delegation-lobbying",
    version,
    about = "Solve, simulate and check the delegation-and-lobbying game"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Override one configuration key; may be repeated.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long, global = true, value_name = "csv|json")]
    pub format: Option<OutputFormat>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_name = "final-policy-band|proposal-band")]
    pub mode: Option<RegimeInterpretation>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Equilibrium and optimal legislation at the configured parameters.
    Solve,
    /// Play the continuation game for one shock or for simulated draws.
    Simulate {
        /// Use this shock instead of simulating `draws` shocks.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<f64>,
    },
    /// Solve along one or two parameter axes.
    Sweep(SweepArgs),
    /// Compare every closed form with its numeric oracle.
    Verify {
        #[arg(long, default_value_t = 100)]
        sample: usize,
        /// Treat flagged printed-formula discrepancies as failures.
        #[arg(long)]
        strict: bool,
    },
    /// Evaluate the comparative-statics hypotheses on a random grid.
    Hypotheses {
        #[arg(long, default_value_t = 500)]
        grid: usize,
        #[arg(long, default_value = "all", value_name = "all|capture|congress-above-agency")]
        region: GridRegion,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub param: Param,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, requires_all = ["from2", "to2", "steps2"])]
    pub param2: Option<Param>,
    #[arg(long, allow_hyphen_values = true)]
    pub from2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to2: Option<f64>,
    #[arg(long)]
    pub steps2: Option<usize>,
    /// Emit the `(d - R)^2` matrix over agency and Congress ideal points.
    #[arg(long)]
    pub surface: bool,
}

impl SweepArgs {
    fn spec(&self) -> Result<SweepSpec, ConfigError> {
        let first = SweepAxis::new(self.param, self.from, self.to, self.steps)?;
        let second = match (self.param2, self.from2, self.to2, self.steps2) {
            (Some(p), Some(a), Some(b), Some(n)) => Some(SweepAxis::new(p, a, b, n)?),
            (None, None, None, None) => None,
            _ => return Err(ConfigError::Usage("--param2 needs --from2, --to2 and --steps2".into())),
        };
        Ok(SweepSpec { first, second })
    }
}

/// Builds the run configuration: defaults, then the config file, then
/// `--set` overrides, then the dedicated flags.
pub fn load_config(global: &GlobalArgs) -> Result<(RunConfig, Vec<String>), ConfigError> {
    let mut entries = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.clone(),
                source,
            })?;
            parse_config_text(&text)?
        }
        None => Vec::new(),
    };
    for item in &global.set {
        let entry = parse_assignment(item)
            .ok_or_else(|| ConfigError::Usage(format!("--set expects KEY=VALUE, got `{item}`")))?;
        entries.push(entry);
    }
    let (mut config, warnings) = RunConfig::from_entries(&entries)?;
    if let Some(format) = global.format {
        config.output_format = format;
    }
    if let Some(out) = &global.out {
        config.output_path = Some(out.clone());
    }
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    if let Some(mode) = global.mode {
        config.mode = mode;
    }
    Ok((config, warnings))
}

enum Outcome {
    Rendered { text: String, failed: bool },
}

fn execute(command: &Command, config: &RunConfig) -> Result<Outcome, ConfigError> {
    let format = config.output_format;
    let done = |r: &dyn Fn() -> String, failed: bool| Outcome::Rendered { text: r(), failed };
    Ok(match command {
        Command::Solve => {
            let r = commands::cmd_solve(config);
            done(&|| r.render(format), false)
        }
        Command::Simulate { omega } => {
            let r = commands::cmd_simulate(config, *omega)?;
            done(&|| r.render(format), false)
        }
        Command::Sweep(args) => {
            let spec = args.spec()?;
            if args.surface {
                let r = commands::cmd_surface(config, &spec)?;
                done(&|| r.render(format), false)
            } else {
                let r = commands::cmd_sweep(config, &spec)?;
                done(&|| r.render(format), false)
            }
        }
        Command::Verify { sample, strict } => {
            let r = commands::cmd_verify(config, *sample, *strict)?;
            done(&|| r.render(format), r.failed)
        }
        Command::Hypotheses { grid, region } => {
            let r = commands::cmd_hypotheses(config, *grid, *region)?;
            done(&|| r.render(format), r.failed)
        }
    })
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status. Reports go to `--out` or `stdout`; diagnostics to `stderr`.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render().ansi());
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let (config, warnings) = match load_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    for w in warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let Outcome::Rendered { text, failed } = match execute(&cli.command, &config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let written = match &config.output_path {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_IO;
    }
    if failed {
        let _ = writeln!(stderr, "checks failed");
        return EXIT_CHECK_FAILED;
    }
    EXIT_OK
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
