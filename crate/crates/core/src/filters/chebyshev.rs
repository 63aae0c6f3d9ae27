//! Minimax filter: the Chebyshev polynomial of the stopband, normalized to
//! pass DC.
//!
//! With `m(z) = (2z − 2 − λ_low)/(2 − λ_low)` the optimal degree-`K`
//! polynomial is `p_K(z) = T_K(m(z)) / T_K(m(0))`, and the three-term
//! recurrence for `T_K` becomes
//!
//! ```text
//! p_{K+1} = 2 α_K m(L) p_K − β_K p_{K−1},
//! α_K = T_K(m₀)/T_{K+1}(m₀),  β_K = T_{K−1}(m₀)/T_{K+1}(m₀)
//! ```
//!
//! with the first step `p_1 = m(L)/m₀`.

use crate::markov::{ChainModel, GraphSignal};

use super::{mapped_laplacian_apply, FilterContext, FilterError};

/// `T_k(m₀)` for `k = 0..=K`, with `m₀ = (−2 − λ_low)/(2 − λ_low)`.
pub fn chebyshev_scalar_at_zero(degree: usize, lambda_low: f64) -> Result<Vec<f64>, FilterError> {
    let ctx = FilterContext::new(lambda_low, degree)?;
    Ok(chebyshev_values(ctx.origin(), degree))
}

fn chebyshev_values(x: f64, degree: usize) -> Vec<f64> {
    let mut values = Vec::with_capacity(degree + 1);
    values.push(1.0);
    if degree >= 1 {
        values.push(x);
    }
    for k in 1..degree {
        values.push(2.0 * x * values[k] - values[k - 1]);
    }
    values
}

/// `p_K(z) = T_K(m(z)) / T_K(m₀)`.
pub fn chebyshev_scalar(z: f64, degree: usize, lambda_low: f64) -> Result<f64, FilterError> {
    let ctx = FilterContext::new(lambda_low, degree)?;
    let num = chebyshev_values(ctx.to_unit_interval(z), degree)[degree];
    let den = chebyshev_values(ctx.origin(), degree)[degree];
    Ok(num / den)
}

/// Recursion state holding `p_{K−1}(L) f` and `p_K(L) f`.
#[derive(Debug, Clone)]
pub struct ChebyshevState<'a> {
    chain: &'a ChainModel,
    ctx: FilterContext,
    previous: Option<Vec<f64>>,
    current: Vec<f64>,
    /// `T_k(m₀)` for every degree reached so far.
    scalars: Vec<f64>,
}

impl<'a> ChebyshevState<'a> {
    /// Degree-0 state; the output is `f`.
    pub fn new(
        chain: &'a ChainModel,
        f: &GraphSignal,
        lambda_low: f64,
    ) -> Result<Self, FilterError> {
        let ctx = FilterContext::new(lambda_low, 0)?;
        chain.check_signal(f)?;
        Ok(Self {
            chain,
            ctx,
            previous: None,
            current: f.to_vec(),
            scalars: vec![1.0],
        })
    }

    pub fn degree(&self) -> usize {
        self.scalars.len() - 1
    }

    /// `T_k(m₀)` for `k = 0..=degree()`; `|T_k(m₀)|` grows strictly.
    pub fn scalars(&self) -> &[f64] {
        &self.scalars
    }

    pub fn output(&self) -> GraphSignal {
        GraphSignal::new(self.current.clone())
    }

    pub fn advance(&mut self) {
        let m0 = self.ctx.origin();
        let mapped = mapped_laplacian_apply(self.chain, &self.ctx, &self.current);
        let next = match self.previous.take() {
            None => {
                self.scalars.push(m0);
                mapped.into_iter().map(|v| v / m0).collect()
            }
            Some(prev) => {
                let k = self.degree();
                let t_next = 2.0 * m0 * self.scalars[k] - self.scalars[k - 1];
                let alpha = self.scalars[k] / t_next;
                let beta = self.scalars[k - 1] / t_next;
                self.scalars.push(t_next);
                mapped
                    .iter()
                    .zip(&prev)
                    .map(|(m, p)| 2.0 * alpha * m - beta * p)
                    .collect()
            }
        };
        self.previous = Some(std::mem::replace(&mut self.current, next));
    }
}

/// `p_K(L) f` for the minimax filter of degree `K`.
pub fn chebyshev_apply(
    chain: &ChainModel,
    f: &GraphSignal,
    degree: usize,
    lambda_low: f64,
) -> Result<GraphSignal, FilterError> {
    let mut state = ChebyshevState::new(chain, f, lambda_low)?;
    while state.degree() < degree {
        state.advance();
    }
    Ok(state.output())
}
