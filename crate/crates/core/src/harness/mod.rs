//! Experiment runner: build a chain, filter a signal at every degree
//! `1..=k_max` with all four filter families and record the worst-state
//! deviation from the stationary mean.
//!
//! Output is a CSV table (one row per degree) preceded by a metadata comment
//! line, or the same data as JSON. Numbers are printed with 12 significant
//! digits so that identical configurations give byte-identical files.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;
use thiserror::Error;

use crate::chains::{self, ChainError, CycleWalkParams, GlauberParams};
use crate::densela::LinalgError;
use crate::filters::{
    self, bernstein_apply, ChebyshevState, ErgodicState, FilterError, FilterKind, LegendreState,
};
use crate::markov::{self, ChainModel, GraphSignal, MarkovError};

pub mod cli;

/// Observable used for the cycle-walk experiment (`p = 11`).
pub const CYCLE_REFERENCE_SIGNAL: [f64; 11] = [
    8.53, 6.22, 3.50, 5.13, 4.01, 0.75, 2.39, 1.23, 1.83, 2.39, 4.17,
];

/// Observable used for the Glauber experiment (`p = 4`), in bitmask state
/// order.
pub const GLAUBER_REFERENCE_SIGNAL: [f64; 16] = [
    9.04, 9.79, 4.38, 1.11, 2.58, 4.08, 5.94, 2.62, 6.02, 7.11, 2.21, 1.17, 2.96, 3.18, 4.24, 5.07,
];

pub const DEFAULT_K_MAX: usize = 20;
pub const SIGNIFICANT_DIGITS: usize = 12;
pub const CSV_HEADER: &str = "degree,ergodic,bernstein,chebyshev,legendre";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no results to write")]
    EmptyResults,
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl HarnessError {
    /// Process exit code: 1 for invalid input, 2 for numerical or runtime
    /// failures.
    pub fn exit_code(&self) -> i32 {
        fn markov_code(e: &MarkovError) -> i32 {
            match e {
                MarkovError::NoConvergence { .. } | MarkovError::Linalg(_) => 2,
                _ => 1,
            }
        }
        fn linalg_code(e: &LinalgError) -> i32 {
            match e {
                LinalgError::NoConvergence { .. } | LinalgError::Singular { .. } => 2,
                _ => 1,
            }
        }
        match self {
            HarnessError::Config(_) | HarnessError::EmptyResults => 1,
            HarnessError::Io(_) => 2,
            HarnessError::Markov(e) => markov_code(e),
            HarnessError::Chain(ChainError::Markov(e)) => markov_code(e),
            HarnessError::Chain(ChainError::Linalg(e)) => linalg_code(e),
            HarnessError::Chain(_) => 1,
            HarnessError::Filter(FilterError::Markov(e)) => markov_code(e),
            HarnessError::Filter(FilterError::Linalg(e)) => linalg_code(e),
            HarnessError::Filter(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    CycleWalk,
    Glauber,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::CycleWalk => "cycle-walk",
            Experiment::Glauber => "glauber",
        })
    }
}

/// Where the observable comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum SignalSource {
    Explicit(Vec<f64>),
    Reference,
    Seeded(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Cycle length (cycle walk) or ring length (Glauber).
    pub p: usize,
    /// Inverse temperature; Glauber only.
    pub beta: f64,
    /// Uniform edge coupling; Glauber only.
    pub coupling: f64,
    pub k_max: usize,
    pub signal: SignalSource,
    pub lambda_low_override: Option<f64>,
}

impl ExperimentConfig {
    /// Cycle walk on 11 vertices with the reference observable.
    pub fn reference_cycle_walk() -> Self {
        Self {
            experiment: Experiment::CycleWalk,
            p: 11,
            beta: 0.0,
            coupling: 0.0,
            k_max: DEFAULT_K_MAX,
            signal: SignalSource::Reference,
            lambda_low_override: None,
        }
    }

    /// Glauber ring with `p = 4`, `β = 0.2`, `J = 1` and the reference
    /// observable.
    pub fn reference_glauber() -> Self {
        Self {
            experiment: Experiment::Glauber,
            p: 4,
            beta: 0.2,
            coupling: 1.0,
            k_max: DEFAULT_K_MAX,
            signal: SignalSource::Reference,
            lambda_low_override: None,
        }
    }

    /// Number of states of the configured chain.
    pub fn state_count(&self) -> usize {
        match self.experiment {
            Experiment::CycleWalk => self.p,
            Experiment::Glauber => 1usize.checked_shl(self.p as u32).unwrap_or(usize::MAX),
        }
    }

    pub fn build_chain(&self) -> Result<ChainModel, HarnessError> {
        let chain = match self.experiment {
            Experiment::CycleWalk => chains::build_cycle_walk(CycleWalkParams::new(self.p)?)?,
            Experiment::Glauber => chains::build_glauber_cycle(&GlauberParams::uniform(
                self.p,
                self.beta,
                self.coupling,
            )?)?,
        };
        Ok(chain)
    }

    /// Resolves the observable for a chain with `n` states.
    pub fn signal(&self, n: usize) -> Result<GraphSignal, HarnessError> {
        let values = match &self.signal {
            SignalSource::Explicit(v) => v.clone(),
            SignalSource::Reference => match self.experiment {
                Experiment::CycleWalk => CYCLE_REFERENCE_SIGNAL.to_vec(),
                Experiment::Glauber => GLAUBER_REFERENCE_SIGNAL.to_vec(),
            },
            SignalSource::Seeded(seed) => seeded_signal(*seed, n),
        };
        if values.len() != n {
            return Err(HarnessError::Config(format!(
                "signal has {} values but the chain has {n} states",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(HarnessError::Config(format!(
                "signal value {i} is not finite"
            )));
        }
        Ok(GraphSignal::new(values))
    }
}

/// Pseudo-random observable: SplitMix64 seeded with `seed`, each draw
/// `(next_u64 >> 11) · 2⁻⁵³ · 10` rounded to two decimals, so values lie in
/// `[0, 10]`.
pub fn seeded_signal(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            (unit * 1000.0).round() / 100.0
        })
        .collect()
}

/// Max absolute error of every filter family at one degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilterResult {
    pub degree: usize,
    pub errors: BTreeMap<FilterKind, f64>,
}

impl FilterResult {
    pub fn error(&self, kind: FilterKind) -> f64 {
        self.errors[&kind]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub experiment: Experiment,
    pub p: usize,
    pub states: usize,
    pub lambda_low: f64,
    pub pi_f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRun {
    pub metadata: RunMetadata,
    pub rows: Vec<FilterResult>,
}

/// Runs all four filters for degrees `1..=k_max`.
///
/// The ergodic average at degree `K` uses `t = K + 1` steps so that every
/// column compares polynomials of the same degree.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentRun, HarnessError> {
    if config.k_max < 1 {
        return Err(HarnessError::Config("k_max must be at least 1".into()));
    }
    let chain = config.build_chain()?;
    let f = config.signal(chain.n())?;
    let lambda_low = config.lambda_low_override.unwrap_or(chain.lambda_low());
    let pi = chain.pi();
    let pi_f = markov::pi_expectation(&f, pi)?;

    let mut ergodic = ErgodicState::new(&chain, &f)?;
    let mut chebyshev = ChebyshevState::new(&chain, &f, lambda_low)?;
    let mut legendre = LegendreState::new(&chain, &f, lambda_low)?;
    let mut rows = Vec::with_capacity(config.k_max);
    for degree in 1..=config.k_max {
        ergodic.advance();
        chebyshev.advance();
        legendre.advance();
        let bernstein = bernstein_apply(&chain, &f, degree, lambda_low)?;
        let mut errors = BTreeMap::new();
        for (kind, out) in [
            (FilterKind::Ergodic, ergodic.output()),
            (FilterKind::Bernstein, bernstein),
            (FilterKind::Chebyshev, chebyshev.output()),
            (FilterKind::Legendre, legendre.output()),
        ] {
            errors.insert(kind, filters::max_abs_error(&out, &f, pi)?);
        }
        rows.push(FilterResult { degree, errors });
    }

    Ok(ExperimentRun {
        metadata: RunMetadata {
            experiment: config.experiment,
            p: config.p,
            states: chain.n(),
            lambda_low,
            pi_f,
        },
        rows,
    })
}

/// `%.{digits}g`-style formatting: shortest of fixed or scientific notation
/// with trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if exponent < -4 || exponent >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    } else {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_value(x: f64) -> String {
    format_significant(x, SIGNIFICANT_DIGITS)
}

/// Writes the header and one row per degree.
pub fn emit_csv(results: &[FilterResult], out: &mut dyn Write) -> Result<(), HarnessError> {
    if results.is_empty() {
        return Err(HarnessError::EmptyResults);
    }
    writeln!(out, "{CSV_HEADER}")?;
    for row in results {
        write!(out, "{}", row.degree)?;
        for kind in FilterKind::ALL {
            write!(out, ",{}", fmt_value(row.error(kind)))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// `# lambda_low=…, pi_f=…`, each value in shortest round-trip form so
/// that parsing it recovers the exact `f64`.
pub fn metadata_line(metadata: &RunMetadata) -> String {
    format!(
        "# lambda_low={}, pi_f={}",
        metadata.lambda_low, metadata.pi_f
    )
}

/// Metadata comment line followed by the CSV table.
pub fn write_report(run: &ExperimentRun, out: &mut dyn Write) -> Result<(), HarnessError> {
    writeln!(out, "{}", metadata_line(&run.metadata))?;
    emit_csv(&run.rows, out)
}

fn rounded(x: f64) -> f64 {
    fmt_value(x).parse().unwrap_or(x)
}

/// `{ "metadata": {...}, "rows": [...] }`; row values are rounded to 12
/// significant digits, metadata is kept at full precision.
pub fn to_json(run: &ExperimentRun) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = run
        .rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            obj.insert("degree".into(), row.degree.into());
            for kind in FilterKind::ALL {
                obj.insert(kind.name().into(), rounded(row.error(kind)).into());
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::json!({
        "metadata": {
            "experiment": run.metadata.experiment,
            "p": run.metadata.p,
            "states": run.metadata.states,
            "lambda_low": run.metadata.lambda_low,
            "pi_f": run.metadata.pi_f,
        },
        "rows": rows,
    })
}

pub fn write_json(run: &ExperimentRun, out: &mut dyn Write) -> Result<(), HarnessError> {
    let text = serde_json::to_string_pretty(&to_json(run)).map_err(io::Error::from)?;
    writeln!(out, "{text}")?;
    Ok(())
}
