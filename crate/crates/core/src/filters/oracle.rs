//! Independent check on the least-squares filter: solve
//! `min ∫_{λ_low}^2 p(z)² dz  s.t.  p(0) = 1` directly as an equality
//! constrained quadratic program over monomials.
//!
//! The monomials are taken in the mapped variable `u = m(z) ∈ [−1, 1]`
//! rather than in `z`. Their Gram matrix has exact entries
//! `∫ u^{i+j} du = 2/(i+j+1)` (zero for odd `i+j`) and is many orders of
//! magnitude better conditioned than the `z`-monomial one on `[λ_low, 2]`.

use crate::densela::{self, Matrix};

use super::{FilterContext, FilterError};

/// Accuracy of the oracle degrades past roughly degree 15 in `f64`.
pub const MAX_ORACLE_DEGREE: usize = 20;

/// Solution of the constrained least-squares problem.
#[derive(Debug, Clone)]
pub struct L2Optimum {
    ctx: FilterContext,
    /// Coefficients of `p` in powers of `u = m(z)`, ascending.
    pub mapped_coefficients: Vec<f64>,
    /// `∫_{λ_low}^2 p(z)² dz` at the optimum.
    pub objective: f64,
}

impl L2Optimum {
    pub fn evaluate(&self, z: f64) -> f64 {
        let u = self.ctx.to_unit_interval(z);
        self.mapped_coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c)
    }
}

fn moment(power: usize) -> f64 {
    if power % 2 == 1 {
        0.0
    } else {
        2.0 / (power + 1) as f64
    }
}

/// Solves the KKT system
/// `[2G v; vᵀ 0] [c; μ] = [0; 1]`, `v_k = m(0)^k`, with Gaussian elimination.
pub fn l2_optimal_oracle(degree: usize, lambda_low: f64) -> Result<L2Optimum, FilterError> {
    if degree > MAX_ORACLE_DEGREE {
        return Err(FilterError::DegreeTooLarge {
            degree,
            cap: MAX_ORACLE_DEGREE,
        });
    }
    let ctx = FilterContext::new(lambda_low, degree)?;
    let n = degree + 1;
    let origin = ctx.origin();
    let constraint: Vec<f64> = (0..n).map(|k| origin.powi(k as i32)).collect();

    let mut kkt = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            kkt[(i, j)] = 2.0 * moment(i + j);
        }
        kkt[(i, n)] = constraint[i];
        kkt[(n, i)] = constraint[i];
    }
    let mut rhs = vec![0.0; n + 1];
    rhs[n] = 1.0;
    let solution = densela::solve_linear(&kkt, &rhs)?;
    let coefficients = solution[..n].to_vec();

    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += coefficients[i] * moment(i + j) * coefficients[j];
        }
    }
    // dz = (2 − λ_low)/2 du
    let objective = 0.5 * (2.0 - lambda_low) * quad;
    Ok(L2Optimum {
        ctx,
        mapped_coefficients: coefficients,
        objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_the_constant() {
        let opt = l2_optimal_oracle(0, 0.0733).unwrap();
        assert_eq!(opt.mapped_coefficients.len(), 1);
        assert!((opt.mapped_coefficients[0] - 1.0).abs() < 1e-15);
        assert!((opt.objective - (2.0 - 0.0733)).abs() < 1e-14);
        assert!((opt.evaluate(1.3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn optimum_passes_dc() {
        for k in 0..=15 {
            let opt = l2_optimal_oracle(k, 0.155).unwrap();
            assert!((opt.evaluate(0.0) - 1.0).abs() < 1e-8, "K={k}");
        }
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            l2_optimal_oracle(21, 0.1),
            Err(FilterError::DegreeTooLarge {
                degree: 21,
                cap: 20
            })
        ));
    }

    #[test]
    fn linear_case_by_hand() {
        // minimise ∫_{-1}^{1} (a + b u)² du with a + b·m₀ = 1:
        // b = 3 m₀ a, a = 1/(1 + 3 m₀²), objective 2/(1 + 3 m₀²) in u
        let lambda = 0.5;
        let m0: f64 = (-2.0 - lambda) / (2.0 - lambda);
        let opt = l2_optimal_oracle(1, lambda).unwrap();
        let expected = 0.5 * (2.0 - lambda) * 2.0 / (1.0 + 3.0 * m0 * m0);
        assert!((opt.objective - expected).abs() < 1e-14);
    }
}
