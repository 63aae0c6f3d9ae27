//! Low-pass polynomial graph filters `p(L)` with `p(0) = 1`.
//!
//! Every filter has two faces: a vector routine that applies `p(L)` to a
//! graph signal with a handful of matrix-vector products, and a scalar
//! routine that evaluates the same polynomial at a frequency `z ∈ [0, 2]`.
//! On an eigenfunction `f_x` the first equals the second at `λ_x` times
//! `f_x`, which is what the spectral tests check.
//!
//! | kind        | stopband design                          |
//! |-------------|------------------------------------------|
//! | `Ergodic`   | Birkhoff average `(1/t) Σ P^k`, `t = K+1` |
//! | `Bernstein` | Bernstein approximant of the triangle     |
//! | `Chebyshev` | minimax on `[λ_low, 2]`                   |
//! | `Legendre`  | least squares on `[λ_low, 2]`             |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::densela::LinalgError;
use crate::markov::{self, ChainModel, GraphSignal, MarkovError};

mod bernstein;
mod chebyshev;
mod ergodic;
mod lagrange;
mod legendre;
mod oracle;

pub use bernstein::{bernstein_apply, bernstein_scalar, triangle};
pub use chebyshev::{chebyshev_apply, chebyshev_scalar, chebyshev_scalar_at_zero, ChebyshevState};
pub use ergodic::{
    ergodic_apply, ergodic_laplacian_coeffs, ergodic_scalar, polynomial_apply, ErgodicState,
};
pub use lagrange::{lagrange_coefficients, lagrange_exact_apply, lagrange_nodes};
pub use legendre::{
    legendre_apply, legendre_basis, legendre_scalar, legendre_scalar_at_zero, LegendreCoefficients,
    LegendreState,
};
pub use oracle::{l2_optimal_oracle, L2Optimum, MAX_ORACLE_DEGREE};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FilterError {
    #[error("lambda_low must lie in (0, 2), got {0}")]
    InvalidLambdaLow(f64),
    #[error("ergodic time must be >= 1, got {0}")]
    InvalidTime(usize),
    #[error("frequency {0} lies outside [0, 2]")]
    FrequencyOutOfRange(f64),
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The four filter families compared by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Ergodic,
    Bernstein,
    Chebyshev,
    Legendre,
}

impl FilterKind {
    pub const ALL: [FilterKind; 4] = [
        FilterKind::Ergodic,
        FilterKind::Bernstein,
        FilterKind::Chebyshev,
        FilterKind::Legendre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FilterKind::Ergodic => "ergodic",
            FilterKind::Bernstein => "bernstein",
            FilterKind::Chebyshev => "chebyshev",
            FilterKind::Legendre => "legendre",
        }
    }

    /// Applies the degree-`degree` member of this family to `f`.
    ///
    /// For `Ergodic` the degree-`K` polynomial is the average over `t = K+1`
    /// steps. `lambda_low` is ignored by `Ergodic`.
    pub fn apply(
        self,
        chain: &ChainModel,
        f: &GraphSignal,
        degree: usize,
        lambda_low: f64,
    ) -> Result<GraphSignal, FilterError> {
        match self {
            FilterKind::Ergodic => ergodic_apply(chain, f, degree + 1),
            FilterKind::Bernstein => bernstein_apply(chain, f, degree, lambda_low),
            FilterKind::Chebyshev => chebyshev_apply(chain, f, degree, lambda_low),
            FilterKind::Legendre => legendre_apply(chain, f, degree, lambda_low),
        }
    }

    /// Frequency response of the same polynomial at `z`.
    pub fn response(self, z: f64, degree: usize, lambda_low: f64) -> Result<f64, FilterError> {
        match self {
            FilterKind::Ergodic => Ok(ergodic_scalar(z, degree + 1)),
            FilterKind::Bernstein => {
                FilterContext::new(lambda_low, degree)?;
                Ok(bernstein_scalar(z, degree, lambda_low))
            }
            FilterKind::Chebyshev => chebyshev_scalar(z, degree, lambda_low),
            FilterKind::Legendre => legendre_scalar(z, degree, lambda_low),
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for FilterKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FilterKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown filter kind `{s}`"))
    }
}

/// Stopband edge and degree shared by the filter constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterContext {
    lambda_low: f64,
    degree: usize,
}

impl FilterContext {
    pub fn new(lambda_low: f64, degree: usize) -> Result<Self, FilterError> {
        if !(lambda_low > 0.0 && lambda_low < 2.0) {
            return Err(FilterError::InvalidLambdaLow(lambda_low));
        }
        Ok(Self { lambda_low, degree })
    }

    pub fn lambda_low(&self) -> f64 {
        self.lambda_low
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Affine map of `[λ_low, 2]` onto `[−1, 1]`.
    pub fn to_unit_interval(&self, z: f64) -> f64 {
        (2.0 * z - 2.0 - self.lambda_low) / (2.0 - self.lambda_low)
    }

    /// Image of `z = 0` under [`Self::to_unit_interval`]; always below −1.
    pub fn origin(&self) -> f64 {
        self.to_unit_interval(0.0)
    }
}

/// `((2L − (2 + λ_low) I) / (2 − λ_low)) u`.
pub(crate) fn mapped_laplacian_apply(
    chain: &ChainModel,
    ctx: &FilterContext,
    u: &[f64],
) -> Vec<f64> {
    let lu = chain.apply_laplacian(u);
    let shift = 2.0 + ctx.lambda_low;
    let scale = 2.0 - ctx.lambda_low;
    lu.iter()
        .zip(u)
        .map(|(l, x)| (2.0 * l - shift * x) / scale)
        .collect()
}

/// `max_x |filtered(x) − π(f)|`.
pub fn max_abs_error(filtered: &[f64], f: &[f64], pi: &[f64]) -> Result<f64, FilterError> {
    if filtered.len() != f.len() {
        return Err(MarkovError::DimensionMismatch {
            expected: f.len(),
            found: filtered.len(),
        }
        .into());
    }
    let mean = markov::pi_expectation(f, pi)?;
    Ok(filtered
        .iter()
        .fold(0.0_f64, |acc, v| acc.max((v - mean).abs())))
}
