//! Laplacian eigenfunctions and the graph Fourier transform of a signal on
//! the 11-cycle.
//!
//! ```text
//! cargo run --example spectral_gft
//! ```

use ergodic_filters::chains::{build_cycle_walk, CycleWalkParams};
use ergodic_filters::harness::CYCLE_REFERENCE_SIGNAL;
use ergodic_filters::markov::{gft, igft, pi_norm, spectral_decomposition, total_variation};
use ergodic_filters::GraphSignal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chain = build_cycle_walk(CycleWalkParams::new(11)?)?;
    let spec = spectral_decomposition(&chain)?;
    let f = GraphSignal::new(CYCLE_REFERENCE_SIGNAL.to_vec());
    let fhat = gft(&f, &spec, chain.pi())?;

    println!("{:>3} {:>10} {:>10} {:>10}", "k", "λ_k", "f̂_k", "TV(f_k)");
    for (k, (&lambda, coeff)) in spec.eigenvalues().iter().zip(&fhat).enumerate() {
        let tv = total_variation(&spec.eigenfunction(k), &chain)?;
        println!("{k:>3} {lambda:>10.5} {coeff:>10.5} {tv:>10.5}");
    }

    let energy: f64 = fhat.iter().map(|c| c * c).sum::<f64>().sqrt();
    println!(
        "‖f‖_π = {:.6}, ‖f̂‖₂ = {energy:.6}",
        pi_norm(&f, chain.pi())?
    );

    let back = igft(&fhat, &spec)?;
    let err = back
        .iter()
        .zip(f.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("inverse transform error {err:.1e}");
    Ok(())
}
