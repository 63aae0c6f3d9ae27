use crate::markov::{ChainModel, GraphSignal};

use super::{FilterContext, FilterError};

/// Triangle low-pass prototype: `1 − z/λ_low` on `[0, λ_low)`, zero on
/// `[λ_low, 2]`.
pub fn triangle(z: f64, lambda_low: f64) -> Result<f64, FilterError> {
    if !(0.0..=2.0).contains(&z) {
        return Err(FilterError::FrequencyOutOfRange(z));
    }
    Ok(triangle_value(z, lambda_low))
}

pub(crate) fn triangle_value(z: f64, lambda_low: f64) -> f64 {
    if z < lambda_low {
        1.0 - z / lambda_low
    } else {
        0.0
    }
}

/// `B_K(g_Δ; z) = Σ_l g_Δ(2l/K) C(K,l) (z/2)^l (1 − z/2)^{K−l}`.
///
/// Basis weights are formed in log space so `K` in the hundreds does not
/// overflow the binomials. `z` is clamped to `[0, 2]`. Degree 0 is the
/// constant 1.
pub fn bernstein_scalar(z: f64, degree: usize, lambda_low: f64) -> f64 {
    if degree == 0 {
        return 1.0;
    }
    let k = degree as f64;
    let t = (z / 2.0).clamp(0.0, 1.0);
    if t == 0.0 {
        return triangle_value(0.0, lambda_low);
    }
    if t == 1.0 {
        return triangle_value(2.0, lambda_low);
    }
    let (ln_t, ln_s) = (t.ln(), (1.0 - t).ln());
    let mut ln_binom = 0.0;
    let mut sum = 0.0;
    for l in 0..=degree {
        if l > 0 {
            ln_binom += ((degree - l + 1) as f64).ln() - (l as f64).ln();
        }
        let g = triangle_value(2.0 * l as f64 / k, lambda_low);
        if g == 0.0 {
            // the triangle vanishes from here on
            break;
        }
        sum += g * (ln_binom + l as f64 * ln_t + (degree - l) as f64 * ln_s).exp();
    }
    sum
}

/// `B_K(g_Δ; L) f` by de Casteljau's recursion on vectors.
///
/// Starts from `b_l = g_Δ(2l/K) f` and repeatedly combines neighbours with
/// `b_l ← (I − L/2) b_l + (L/2) b_{l+1}`; `K(K+1)/2` Laplacian products.
pub fn bernstein_apply(
    chain: &ChainModel,
    f: &GraphSignal,
    degree: usize,
    lambda_low: f64,
) -> Result<GraphSignal, FilterError> {
    FilterContext::new(lambda_low, degree)?;
    chain.check_signal(f)?;
    if degree == 0 {
        return Ok(f.clone());
    }
    let k = degree as f64;
    let mut points: Vec<Vec<f64>> = (0..=degree)
        .map(|l| {
            let g = triangle_value(2.0 * l as f64 / k, lambda_low);
            f.iter().map(|x| g * x).collect()
        })
        .collect();
    for active in (1..=degree).rev() {
        // (L/2) b_l for every live control point; zero points stay zero
        let half_l: Vec<Vec<f64>> = points
            .iter()
            .map(|b| {
                if b.iter().all(|&x| x == 0.0) {
                    vec![0.0; b.len()]
                } else {
                    chain
                        .apply_laplacian(b)
                        .into_iter()
                        .map(|x| 0.5 * x)
                        .collect()
                }
            })
            .collect();
        points.truncate(active);
        for (l, b) in points.iter_mut().enumerate() {
            for (i, v) in b.iter_mut().enumerate() {
                *v += half_l[l + 1][i] - half_l[l][i];
            }
        }
    }
    Ok(GraphSignal::new(points.swap_remove(0)))
}
