use crate::markov::{self, GraphSignal, SpectralDecomposition, ZERO_FREQUENCY_TOLERANCE};

use super::FilterError;

/// Eigenvalues closer than this are treated as one interpolation node.
pub const NODE_MERGE_TOLERANCE: f64 = 1e-12;

/// Distinct nonzero Laplacian eigenvalues, ascending.
pub fn lagrange_nodes(spec: &SpectralDecomposition) -> Vec<f64> {
    let mut nodes: Vec<f64> = Vec::new();
    for &lambda in spec.eigenvalues() {
        if lambda.abs() < ZERO_FREQUENCY_TOLERANCE {
            continue;
        }
        if nodes
            .last()
            .is_none_or(|&prev| (lambda - prev).abs() > NODE_MERGE_TOLERANCE)
        {
            nodes.push(lambda);
        }
    }
    nodes
}

/// Monomial coefficients (ascending powers of `z`) of
/// `q(z) = Π_j (1 − z/λ_j)` over the distinct nonzero eigenvalues: the
/// unique lowest-degree polynomial with `q(0) = 1` and `q(λ_j) = 0`.
pub fn lagrange_coefficients(spec: &SpectralDecomposition) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    for lambda in lagrange_nodes(spec) {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c / lambda;
        }
        coeffs = next;
    }
    coeffs
}

/// Exact projection onto the zero frequency, `π(f)·1`, by discarding every
/// nonzero-frequency GFT coefficient.
pub fn lagrange_exact_apply(
    spec: &SpectralDecomposition,
    f: &GraphSignal,
    pi: &[f64],
) -> Result<GraphSignal, FilterError> {
    let mut fhat = markov::gft(f, spec, pi)?;
    for (coeff, lambda) in fhat.iter_mut().zip(spec.eigenvalues()) {
        if lambda.abs() >= ZERO_FREQUENCY_TOLERANCE {
            *coeff = 0.0;
        }
    }
    Ok(markov::igft(&fhat, spec)?)
}
