//! Reversible Markov chains viewed as weighted graphs.
//!
//! A transition matrix `P` that satisfies detailed balance with respect to
//! its stationary law `π` is self-adjoint in the `π`-weighted inner product.
//! The combinatorial Laplacian `L = I − P` then has a real spectrum in
//! `[0, 2]` and a `π`-orthonormal eigenbasis, which is the Fourier basis used
//! by every filter in this crate.

use std::ops::Deref;

use thiserror::Error;

use crate::densela::{self, LinalgError, Matrix};

/// Row sums of a transition matrix must be within this of 1.
pub const STOCHASTIC_TOLERANCE: f64 = 1e-12;

/// Stationary distributions must sum to 1 within this.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

/// Absolute tolerance on `|π(x)P(x,y) − π(y)P(y,x)|`.
pub const DETAILED_BALANCE_TOLERANCE: f64 = 1e-10;

/// Jacobi tolerance used for the Laplacian eigenproblem.
pub const SPECTRAL_TOLERANCE: f64 = 1e-13;

/// Eigenvalues closer than this to 0 belong to the zero-frequency cluster.
pub const ZERO_FREQUENCY_TOLERANCE: f64 = 1e-8;

/// Iteration cap for the numeric stationary-distribution fallback.
pub const POWER_ITERATION_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MarkovError {
    #[error("row {row} is not stochastic (deviation {magnitude:e})")]
    StochasticityViolation { row: usize, magnitude: f64 },
    #[error("stationary distribution is not a positive probability vector (index {index}, value {magnitude:e})")]
    NonPositivePi { index: usize, magnitude: f64 },
    #[error("detailed balance fails at ({from}, {to}) by {magnitude:e}")]
    DetailedBalanceViolation {
        from: usize,
        to: usize,
        magnitude: f64,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("signal has zero pi-norm")]
    ZeroSignal,
    #[error("lambda_low must lie in (0, 2], got {0}")]
    InvalidLambdaLow(f64),
    #[error("power iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Row-stochastic matrix with non-negative entries.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix(Matrix);

impl TransitionMatrix {
    pub fn new(p: Matrix) -> Result<Self, MarkovError> {
        if !p.is_square() {
            return Err(LinalgError::NotSquare {
                rows: p.rows(),
                cols: p.cols(),
            }
            .into());
        }
        for row in 0..p.rows() {
            let entries = p.row(row);
            if let Some(&neg) = entries.iter().find(|&&x| x < 0.0) {
                return Err(MarkovError::StochasticityViolation {
                    row,
                    magnitude: neg,
                });
            }
            let deviation = entries.iter().sum::<f64>() - 1.0;
            if deviation.abs() > STOCHASTIC_TOLERANCE {
                return Err(MarkovError::StochasticityViolation {
                    row,
                    magnitude: deviation,
                });
            }
        }
        Ok(Self(p))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// Strictly positive probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution(Vec<f64>);

impl StationaryDistribution {
    pub fn new(pi: Vec<f64>) -> Result<Self, MarkovError> {
        if let Some((index, &magnitude)) = pi
            .iter()
            .enumerate()
            .find(|(_, x)| !(x.is_finite() && **x > 0.0))
        {
            return Err(MarkovError::NonPositivePi { index, magnitude });
        }
        let total: f64 = pi.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(MarkovError::NonPositivePi {
                index: pi.len(),
                magnitude: total,
            });
        }
        Ok(Self(pi))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for StationaryDistribution {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Real function on the state space.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSignal(Vec<f64>);

impl GraphSignal {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self(vec![c; n])
    }

    pub fn ones(n: usize) -> Self {
        Self::constant(n, 1.0)
    }

    pub fn indicator(n: usize, x: usize) -> Self {
        let mut v = vec![0.0; n];
        v[x] = 1.0;
        Self(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for GraphSignal {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for GraphSignal {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// A transition matrix and stationary law that passed [`validate_chain`].
#[derive(Debug, Clone)]
pub struct ValidatedChain {
    pub p: TransitionMatrix,
    pub pi: StationaryDistribution,
}

/// Checks dimensions and detailed balance for a `(P, π)` pair.
///
/// Row-stochasticity and positivity of `π` are already enforced by the
/// constructors of [`TransitionMatrix`] and [`StationaryDistribution`].
pub fn validate_chain(
    p: TransitionMatrix,
    pi: StationaryDistribution,
) -> Result<ValidatedChain, MarkovError> {
    let n = p.n();
    if pi.len() != n {
        return Err(MarkovError::DimensionMismatch {
            expected: n,
            found: pi.len(),
        });
    }
    let (from, to, magnitude) = worst_detailed_balance(&p, &pi);
    if magnitude > DETAILED_BALANCE_TOLERANCE {
        return Err(MarkovError::DetailedBalanceViolation {
            from,
            to,
            magnitude,
        });
    }
    Ok(ValidatedChain { p, pi })
}

/// Worst `|π(x)P(x,y) − π(y)P(y,x)|` and where it occurs.
pub fn worst_detailed_balance(p: &TransitionMatrix, pi: &[f64]) -> (usize, usize, f64) {
    let m = p.matrix();
    let mut worst = (0, 0, 0.0_f64);
    for x in 0..m.rows() {
        for y in x + 1..m.rows() {
            let d = (pi[x] * m[(x, y)] - pi[y] * m[(y, x)]).abs();
            if d > worst.2 {
                worst = (x, y, d);
            }
        }
    }
    worst
}

/// A reversible chain ready for filtering.
#[derive(Debug, Clone)]
pub struct ChainModel {
    p: TransitionMatrix,
    pi: StationaryDistribution,
    laplacian: Matrix,
    lambda_low: f64,
}

impl ChainModel {
    pub fn new(
        p: TransitionMatrix,
        pi: StationaryDistribution,
        lambda_low: f64,
    ) -> Result<Self, MarkovError> {
        Self::from_validated(validate_chain(p, pi)?, lambda_low)
    }

    pub fn from_validated(chain: ValidatedChain, lambda_low: f64) -> Result<Self, MarkovError> {
        if !(lambda_low > 0.0 && lambda_low <= 2.0) {
            return Err(MarkovError::InvalidLambdaLow(lambda_low));
        }
        let laplacian = laplacian(&chain.p);
        Ok(Self {
            p: chain.p,
            pi: chain.pi,
            laplacian,
            lambda_low,
        })
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    pub fn transition(&self) -> &TransitionMatrix {
        &self.p
    }

    pub fn pi(&self) -> &StationaryDistribution {
        &self.pi
    }

    pub fn laplacian(&self) -> &Matrix {
        &self.laplacian
    }

    pub fn lambda_low(&self) -> f64 {
        self.lambda_low
    }

    /// Same chain with a different stopband edge.
    pub fn with_lambda_low(&self, lambda_low: f64) -> Result<Self, MarkovError> {
        if !(lambda_low > 0.0 && lambda_low <= 2.0) {
            return Err(MarkovError::InvalidLambdaLow(lambda_low));
        }
        Ok(Self {
            lambda_low,
            ..self.clone()
        })
    }

    pub(crate) fn check_signal(&self, f: &[f64]) -> Result<(), MarkovError> {
        if f.len() != self.n() {
            return Err(MarkovError::DimensionMismatch {
                expected: self.n(),
                found: f.len(),
            });
        }
        Ok(())
    }

    /// `L·f`.
    pub(crate) fn apply_laplacian(&self, f: &[f64]) -> Vec<f64> {
        self.laplacian.apply(f)
    }

    /// `P·f`.
    pub(crate) fn apply_transition(&self, f: &[f64]) -> Vec<f64> {
        self.p.matrix().apply(f)
    }
}

/// Stationary law by power iteration on the lazy chain `(I + P)/2`.
///
/// The lazy chain has the same stationary law and is aperiodic, so this also
/// converges for periodic chains such as the two-state flip.
pub fn stationary_distribution(
    p: &TransitionMatrix,
    tol: f64,
) -> Result<StationaryDistribution, MarkovError> {
    let n = p.n();
    let m = p.matrix();
    let mut pi = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..POWER_ITERATION_CAP {
        let mut next = vec![0.0; n];
        for x in 0..n {
            let px = pi[x];
            for (y, acc) in next.iter_mut().enumerate() {
                *acc += px * m[(x, y)];
            }
        }
        residual = next
            .iter()
            .zip(&pi)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()));
        if residual <= tol {
            let total: f64 = next.iter().sum();
            return StationaryDistribution::new(next.into_iter().map(|v| v / total).collect());
        }
        for (slot, v) in pi.iter_mut().zip(next) {
            *slot = 0.5 * (*slot + v);
        }
    }
    Err(MarkovError::NoConvergence {
        iterations: POWER_ITERATION_CAP,
        residual,
    })
}

/// `L = I − P`, entrywise.
pub fn laplacian(p: &TransitionMatrix) -> Matrix {
    let n = p.n();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            l[(i, j)] = id - p.matrix()[(i, j)];
        }
    }
    l
}

fn check_len(expected: usize, found: usize) -> Result<(), MarkovError> {
    if expected != found {
        return Err(MarkovError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `⟨f, g⟩_π = Σ f(x) g(x) π(x)`.
pub fn pi_inner(f: &[f64], g: &[f64], pi: &[f64]) -> Result<f64, MarkovError> {
    check_len(pi.len(), f.len())?;
    check_len(pi.len(), g.len())?;
    Ok(f.iter().zip(g).zip(pi).map(|((a, b), w)| a * b * w).sum())
}

/// `π(f) = Σ f(x) π(x)`.
pub fn pi_expectation(f: &[f64], pi: &[f64]) -> Result<f64, MarkovError> {
    check_len(pi.len(), f.len())?;
    Ok(f.iter().zip(pi).map(|(a, w)| a * w).sum())
}

/// `‖f‖_π`.
pub fn pi_norm(f: &[f64], pi: &[f64]) -> Result<f64, MarkovError> {
    Ok(pi_inner(f, f, pi)?.sqrt())
}

/// Normalized graph variation
/// `sqrt(Σ_x Σ_y π(x)P(x,y)|f(x) − f(y)|²) / ‖f‖_π`,
/// summed over ordered pairs.
pub fn total_variation(f: &[f64], chain: &ChainModel) -> Result<f64, MarkovError> {
    chain.check_signal(f)?;
    let pi = chain.pi();
    let norm = pi_norm(f, pi)?;
    if norm == 0.0 {
        return Err(MarkovError::ZeroSignal);
    }
    let p = chain.transition().matrix();
    let mut acc = 0.0;
    for x in 0..chain.n() {
        for y in 0..chain.n() {
            let w = p[(x, y)];
            if w != 0.0 {
                let d = f[x] - f[y];
                acc += pi[x] * w * d * d;
            }
        }
    }
    Ok(acc.sqrt() / norm)
}

/// Laplacian eigenvalues with a `π`-orthonormal eigenfunction basis.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenfunctions: Matrix,
}

impl SpectralDecomposition {
    /// Ascending frequencies; index 0 is the zero frequency.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column `k` is the eigenfunction of `eigenvalues()[k]`.
    pub fn eigenfunctions(&self) -> &Matrix {
        &self.eigenfunctions
    }

    pub fn eigenfunction(&self, k: usize) -> GraphSignal {
        GraphSignal(self.eigenfunctions.column(k))
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Second-smallest eigenvalue, i.e. the spectral gap of `P`.
    pub fn spectral_gap(&self) -> Option<f64> {
        self.eigenvalues.get(1).copied()
    }
}

/// Eigenpairs of `L` through the symmetric matrix
/// `S = D^{1/2} L D^{-1/2}` with `D = diag(π)`.
///
/// Eigenvectors `v` of `S` map to eigenfunctions `f = D^{-1/2} v`. The
/// zero-frequency eigenfunction is set to the constant signal `1`; the rest
/// are sign-fixed so their first non-negligible entry is positive.
pub fn spectral_decomposition(chain: &ChainModel) -> Result<SpectralDecomposition, MarkovError> {
    let n = chain.n();
    let pi = chain.pi();
    let sqrt_pi: Vec<f64> = pi.iter().map(|w| w.sqrt()).collect();
    let l = chain.laplacian();
    let mut s = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = sqrt_pi[i] * l[(i, j)] / sqrt_pi[j];
        }
    }
    let eig = densela::symmetric_eigen(&s, SPECTRAL_TOLERANCE).map_err(|e| match e {
        LinalgError::NotSymmetric {
            row,
            col,
            asymmetry,
        } => MarkovError::DetailedBalanceViolation {
            from: row,
            to: col,
            magnitude: asymmetry,
        },
        other => other.into(),
    })?;

    let mut f = Matrix::zeros(n, n);
    for k in 0..n {
        let scale = eig
            .eigenvectors
            .column(k)
            .iter()
            .zip(&sqrt_pi)
            .map(|(v, s)| v / s)
            .find(|x| x.abs() > 1e-10)
            .map_or(1.0, f64::signum);
        for i in 0..n {
            f[(i, k)] = scale * eig.eigenvectors[(i, k)] / sqrt_pi[i];
        }
    }

    // Zero-frequency cluster: pin the first member to 1 and re-orthonormalise
    // any further members against it (only reducible chains have them).
    let zero_cluster = eig
        .eigenvalues
        .iter()
        .take_while(|l| l.abs() < ZERO_FREQUENCY_TOLERANCE)
        .count()
        .max(1);
    for i in 0..n {
        f[(i, 0)] = 1.0;
    }
    for k in 1..zero_cluster {
        for j in 0..k {
            let mut dot = 0.0;
            for i in 0..n {
                dot += f[(i, k)] * f[(i, j)] * pi[i];
            }
            for i in 0..n {
                f[(i, k)] -= dot * f[(i, j)];
            }
        }
        let norm: f64 = (0..n)
            .map(|i| f[(i, k)] * f[(i, k)] * pi[i])
            .sum::<f64>()
            .sqrt();
        for i in 0..n {
            f[(i, k)] /= norm;
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues: eig.eigenvalues,
        eigenfunctions: f,
    })
}

/// Graph Fourier transform: `f̂(k) = ⟨f, f_k⟩_π`.
pub fn gft(f: &[f64], spec: &SpectralDecomposition, pi: &[f64]) -> Result<Vec<f64>, MarkovError> {
    check_len(spec.len(), f.len())?;
    check_len(spec.len(), pi.len())?;
    let basis = &spec.eigenfunctions;
    Ok((0..spec.len())
        .map(|k| (0..f.len()).map(|i| f[i] * basis[(i, k)] * pi[i]).sum())
        .collect())
}

/// Inverse transform: `f(x) = Σ_k f̂(k) f_k(x)`.
pub fn igft(fhat: &[f64], spec: &SpectralDecomposition) -> Result<GraphSignal, MarkovError> {
    check_len(spec.len(), fhat.len())?;
    Ok(GraphSignal(spec.eigenfunctions.apply(fhat)))
}
