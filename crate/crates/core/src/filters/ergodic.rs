use crate::markov::{ChainModel, GraphSignal};

use super::FilterError;

/// Birkhoff average `(1/t)(f + Pf + … + P^{t−1}f)`.
pub fn ergodic_apply(
    chain: &ChainModel,
    f: &GraphSignal,
    t: usize,
) -> Result<GraphSignal, FilterError> {
    if t < 1 {
        return Err(FilterError::InvalidTime(t));
    }
    let mut state = ErgodicState::new(chain, f)?;
    while state.time() < t {
        state.advance();
    }
    Ok(state.output())
}

/// Running Birkhoff sum, one matvec per step.
#[derive(Debug, Clone)]
pub struct ErgodicState<'a> {
    chain: &'a ChainModel,
    power: Vec<f64>,
    sum: Vec<f64>,
    t: usize,
}

impl<'a> ErgodicState<'a> {
    /// State at `t = 1`, whose output is `f` itself.
    pub fn new(chain: &'a ChainModel, f: &GraphSignal) -> Result<Self, FilterError> {
        chain.check_signal(f)?;
        Ok(Self {
            chain,
            power: f.to_vec(),
            sum: f.to_vec(),
            t: 1,
        })
    }

    pub fn time(&self) -> usize {
        self.t
    }

    pub fn advance(&mut self) {
        self.power = self.chain.apply_transition(&self.power);
        for (s, p) in self.sum.iter_mut().zip(&self.power) {
            *s += p;
        }
        self.t += 1;
    }

    pub fn output(&self) -> GraphSignal {
        let inv = 1.0 / self.t as f64;
        GraphSignal::new(self.sum.iter().map(|s| s * inv).collect())
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients `a(k) = C(t, k+1)(−1)^k / t` of the Birkhoff average written
/// as a polynomial in `L`: `Σ_k a(k) L^k`.
pub fn ergodic_laplacian_coeffs(t: usize) -> Result<Vec<f64>, FilterError> {
    if t < 1 {
        return Err(FilterError::InvalidTime(t));
    }
    let inv_t = 1.0 / t as f64;
    Ok((0..t)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(t, k + 1) * inv_t
        })
        .collect())
}

/// `(1/t) Σ_{j<t} (1 − z)^j`, the frequency response of the average.
pub fn ergodic_scalar(z: f64, t: usize) -> f64 {
    let r = 1.0 - z;
    let mut power = 1.0;
    let mut sum = 0.0;
    for _ in 0..t {
        sum += power;
        power *= r;
    }
    sum / t.max(1) as f64
}

/// `Σ_k c_k L^k f` by Horner's rule.
pub fn polynomial_apply(
    chain: &ChainModel,
    coeffs: &[f64],
    f: &GraphSignal,
) -> Result<GraphSignal, FilterError> {
    chain.check_signal(f)?;
    let mut acc = vec![0.0; f.len()];
    for &c in coeffs.iter().rev() {
        acc = chain.apply_laplacian(&acc);
        for (a, x) in acc.iter_mut().zip(f.iter()) {
            *a += c * x;
        }
    }
    Ok(GraphSignal::new(acc))
}
