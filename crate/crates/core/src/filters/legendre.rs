//! Least-squares filter built from Legendre polynomials orthonormal on
//! `[λ_low, 2]` with respect to Lebesgue measure.
//!
//! `L̃_n(z) = c · sqrt(n + 1/2) · P_n(m(z))` with `c = sqrt(2/(2 − λ_low))`
//! and `m` the affine map onto `[−1, 1]`. The optimal degree-`K` filter is
//! `p_K = Σ_k ξ_k L̃_k` with `ξ_k = L̃_k(0) / Σ_{j≤K} L̃_j(0)²`, and it is
//! updated one degree at a time through
//! `p_{K+1} = γ_K p_K + ξ^{K+1}_{K+1} L̃_{K+1}`.

use crate::markov::{ChainModel, GraphSignal};

use super::{mapped_laplacian_apply, FilterContext, FilterError};

/// Coefficients of the orthonormal three-term recurrence
/// `L̃_{n+1} = a_n m L̃_n − b_n L̃_{n−1}` for `n ≥ 1`.
///
/// From `sqrt(2(n+1)²/(2n+3)) L̃_{n+1} = sqrt(2(2n+1)) m L̃_n −
/// sqrt(2n²/(2n−1)) L̃_{n−1}`.
fn recurrence(n: usize) -> (f64, f64) {
    let n = n as f64;
    let lead = (2.0 * (n + 1.0) * (n + 1.0) / (2.0 * n + 3.0)).sqrt();
    let a = (2.0 * (2.0 * n + 1.0)).sqrt() / lead;
    let b = (2.0 * n * n / (2.0 * n - 1.0)).sqrt() / lead;
    (a, b)
}

fn scale(ctx: &FilterContext) -> f64 {
    (2.0 / (2.0 - ctx.lambda_low())).sqrt()
}

/// `L̃_0(z), …, L̃_K(z)`.
pub fn legendre_basis(z: f64, degree: usize, lambda_low: f64) -> Result<Vec<f64>, FilterError> {
    let ctx = FilterContext::new(lambda_low, degree)?;
    Ok(basis_at(&ctx, ctx.to_unit_interval(z), degree))
}

fn basis_at(ctx: &FilterContext, m: f64, degree: usize) -> Vec<f64> {
    let c = scale(ctx);
    let mut values = Vec::with_capacity(degree + 1);
    values.push(c * 0.5_f64.sqrt());
    if degree >= 1 {
        values.push(c * 1.5_f64.sqrt() * m);
    }
    for n in 1..degree {
        let (a, b) = recurrence(n);
        values.push(a * m * values[n] - b * values[n - 1]);
    }
    values
}

/// Scalar data of the degree-`K` least-squares filter.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreCoefficients {
    /// `L̃_k(0)` for `k = 0..=K`.
    pub values_at_zero: Vec<f64>,
    /// `Σ_{j≤k} L̃_j(0)²` for `k = 0..=K`.
    pub partial_sums: Vec<f64>,
    /// `ξ_k^K` for `k = 0..=K`.
    pub xi: Vec<f64>,
    /// `γ_k` for `k = 0..K`.
    pub gamma: Vec<f64>,
}

impl LegendreCoefficients {
    /// Minimal squared L2 norm over `[λ_low, 2]` among degree-`K`
    /// polynomials with `p(0) = 1`.
    pub fn optimal_objective(&self) -> f64 {
        1.0 / self.partial_sums.last().copied().unwrap_or(f64::NAN)
    }
}

pub fn legendre_scalar_at_zero(
    degree: usize,
    lambda_low: f64,
) -> Result<LegendreCoefficients, FilterError> {
    let ctx = FilterContext::new(lambda_low, degree)?;
    let values_at_zero = basis_at(&ctx, ctx.origin(), degree);
    let partial_sums: Vec<f64> = values_at_zero
        .iter()
        .scan(0.0, |acc, v| {
            *acc += v * v;
            Some(*acc)
        })
        .collect();
    let total = partial_sums[degree];
    let xi = values_at_zero.iter().map(|v| v / total).collect();
    let gamma = partial_sums.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(LegendreCoefficients {
        values_at_zero,
        partial_sums,
        xi,
        gamma,
    })
}

/// `p_K(z) = Σ_k ξ_k^K L̃_k(z)`.
pub fn legendre_scalar(z: f64, degree: usize, lambda_low: f64) -> Result<f64, FilterError> {
    let coeffs = legendre_scalar_at_zero(degree, lambda_low)?;
    let basis = legendre_basis(z, degree, lambda_low)?;
    Ok(coeffs.xi.iter().zip(&basis).map(|(x, b)| x * b).sum())
}

/// Coupled recursion state: the running filter output plus the last two
/// basis vectors `L̃_K(L) f`, `L̃_{K−1}(L) f`.
#[derive(Debug, Clone)]
pub struct LegendreState<'a> {
    chain: &'a ChainModel,
    ctx: FilterContext,
    output: Vec<f64>,
    basis_prev: Vec<f64>,
    basis_curr: Vec<f64>,
    values_at_zero: Vec<f64>,
    partial_sums: Vec<f64>,
}

impl<'a> LegendreState<'a> {
    /// Degree-0 state; `p_0 ≡ 1` so the output is `f`.
    pub fn new(
        chain: &'a ChainModel,
        f: &GraphSignal,
        lambda_low: f64,
    ) -> Result<Self, FilterError> {
        let ctx = FilterContext::new(lambda_low, 0)?;
        chain.check_signal(f)?;
        let l0 = scale(&ctx) * 0.5_f64.sqrt();
        Ok(Self {
            chain,
            ctx,
            output: f.to_vec(),
            basis_prev: Vec::new(),
            basis_curr: f.iter().map(|x| l0 * x).collect(),
            values_at_zero: vec![l0],
            partial_sums: vec![l0 * l0],
        })
    }

    pub fn degree(&self) -> usize {
        self.values_at_zero.len() - 1
    }

    pub fn output(&self) -> GraphSignal {
        GraphSignal::new(self.output.clone())
    }

    /// `Σ_{j≤k} L̃_j(0)²` for every degree reached; strictly increasing.
    pub fn partial_sums(&self) -> &[f64] {
        &self.partial_sums
    }

    pub fn advance(&mut self) {
        let k = self.degree();
        let m0 = self.ctx.origin();
        let mapped = mapped_laplacian_apply(self.chain, &self.ctx, &self.basis_curr);
        let (next_basis, next_zero) = if k == 0 {
            // L̃_1 = sqrt(3) m L̃_0
            let a = 3.0_f64.sqrt();
            (
                mapped.iter().map(|v| a * v).collect::<Vec<_>>(),
                a * m0 * self.values_at_zero[0],
            )
        } else {
            let (a, b) = recurrence(k);
            (
                mapped
                    .iter()
                    .zip(&self.basis_prev)
                    .map(|(m, p)| a * m - b * p)
                    .collect(),
                a * m0 * self.values_at_zero[k] - b * self.values_at_zero[k - 1],
            )
        };
        let sum_k = self.partial_sums[k];
        let sum_next = sum_k + next_zero * next_zero;
        let gamma = sum_k / sum_next;
        let xi_next = next_zero / sum_next;
        for (o, b) in self.output.iter_mut().zip(&next_basis) {
            *o = gamma * *o + xi_next * b;
        }
        self.values_at_zero.push(next_zero);
        self.partial_sums.push(sum_next);
        self.basis_prev = std::mem::replace(&mut self.basis_curr, next_basis);
    }
}

/// `p_K(L) f` for the least-squares filter of degree `K`.
pub fn legendre_apply(
    chain: &ChainModel,
    f: &GraphSignal,
    degree: usize,
    lambda_low: f64,
) -> Result<GraphSignal, FilterError> {
    let mut state = LegendreState::new(chain, f, lambda_low)?;
    while state.degree() < degree {
        state.advance();
    }
    Ok(state.output())
}
