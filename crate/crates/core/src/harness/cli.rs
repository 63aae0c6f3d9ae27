//! Command-line front end for [`run_experiment`](super::run_experiment()).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::{
    run_experiment, write_json, write_report, ExperimentConfig, HarnessError, SignalSource,
    DEFAULT_K_MAX,
};

#[derive(Debug, Parser)]
#[command(
    name = "ergodic-filters",
    version,
    about = "Compare polynomial filters for accelerating ergodic averages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simple random walk on an odd cycle.
    CycleWalk {
        /// Cycle length (odd, at least 3).
        #[arg(long, default_value_t = 11)]
        p: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Glauber dynamics of an Ising ring.
    Glauber {
        /// Number of spins.
        #[arg(long, default_value_t = 4)]
        p: usize,
        /// Inverse temperature.
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        beta: f64,
        /// Coupling applied to every edge.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        coupling: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Largest filter degree.
    #[arg(long = "k-max", default_value_t = DEFAULT_K_MAX)]
    k_max: usize,
    /// Comma-separated values, or `@path` to read them from a file.
    #[arg(long, allow_hyphen_values = true)]
    signal: Option<String>,
    /// Seed for a pseudo-random signal.
    #[arg(long)]
    seed: Option<u64>,
    /// Use the built-in reference signal.
    #[arg(long)]
    paper_defaults: bool,
    /// Override the lower spectral bound.
    #[arg(long = "lambda-low", allow_negative_numbers = true)]
    lambda_low: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

fn parse_values(text: &str) -> Result<Vec<f64>, HarnessError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| HarnessError::Config(format!("cannot parse signal value {tok:?}")))
        })
        .collect()
}

fn signal_source(common: &CommonArgs) -> Result<SignalSource, HarnessError> {
    if let Some(spec) = &common.signal {
        let text = match spec.strip_prefix('@') {
            Some(path) => fs::read_to_string(path).map_err(|e| {
                HarnessError::Config(format!("cannot read signal file {path}: {e}"))
            })?,
            None => spec.clone(),
        };
        let values = parse_values(&text)?;
        if values.is_empty() {
            return Err(HarnessError::Config("signal is empty".into()));
        }
        return Ok(SignalSource::Explicit(values));
    }
    if common.paper_defaults {
        return Ok(SignalSource::Reference);
    }
    if let Some(seed) = common.seed {
        return Ok(SignalSource::Seeded(seed));
    }
    Err(HarnessError::Config(
        "no signal given; use --signal, --seed or --paper-defaults".into(),
    ))
}

fn build_config(command: &Command) -> Result<(ExperimentConfig, &CommonArgs), HarnessError> {
    let (mut config, common) = match command {
        Command::CycleWalk { p, common } => {
            let mut config = ExperimentConfig::reference_cycle_walk();
            config.p = *p;
            (config, common)
        }
        Command::Glauber {
            p,
            beta,
            coupling,
            common,
        } => {
            let mut config = ExperimentConfig::reference_glauber();
            config.p = *p;
            config.beta = *beta;
            config.coupling = *coupling;
            (config, common)
        }
    };
    config.k_max = common.k_max;
    config.signal = signal_source(common)?;
    config.lambda_low_override = common.lambda_low;
    Ok((config, common))
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<(), HarnessError> {
    let (config, common) = build_config(command)?;
    let run = run_experiment(&config)?;
    let mut buf = Vec::new();
    if common.json {
        write_json(&run, &mut buf)?;
    } else {
        write_report(&run, &mut buf)?;
    }
    match &common.out {
        Some(path) => fs::write(path, buf)?,
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the experiment and
/// returns the process exit code: 0 on success, 1 for invalid input, 2 for
/// numerical failures.
pub fn cli_main<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return if err.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                1
            } else {
                let _ = write!(stdout, "{rendered}");
                0
            };
        }
    };
    match execute(&cli.command, stdout) {
        Ok(()) => 0,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}
