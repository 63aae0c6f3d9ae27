//! Exact averaging with a polynomial that vanishes on every nonzero
//! eigenvalue.
//!
//! ```text
//! cargo run --example lagrange_exact
//! ```

use ergodic_filters::chains::{build_glauber_cycle, GlauberParams};
use ergodic_filters::filters::{
    lagrange_coefficients, lagrange_exact_apply, lagrange_nodes, polynomial_apply,
};
use ergodic_filters::harness::GLAUBER_REFERENCE_SIGNAL;
use ergodic_filters::markov::{pi_expectation, spectral_decomposition};
use ergodic_filters::GraphSignal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chain = build_glauber_cycle(&GlauberParams::uniform(4, 0.2, 1.0)?)?;
    let spec = spectral_decomposition(&chain)?;
    let f = GraphSignal::new(GLAUBER_REFERENCE_SIGNAL.to_vec());

    let nodes = lagrange_nodes(&spec);
    println!(
        "{} states, {} distinct nonzero eigenvalues:",
        chain.n(),
        nodes.len()
    );
    for z in &nodes {
        println!("  {z:.6}");
    }

    let coeffs = lagrange_coefficients(&spec);
    let via_poly = polynomial_apply(&chain, &coeffs, &f)?;
    let via_gft = lagrange_exact_apply(&spec, &f, chain.pi())?;
    let mean = pi_expectation(&f, chain.pi())?;
    let dev = |g: &GraphSignal| g.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    println!("π(f) = {mean:.10}");
    println!(
        "degree-{} polynomial: max deviation {:.1e}",
        coeffs.len() - 1,
        dev(&via_poly)
    );
    println!("spectral projection:   max deviation {:.1e}", dev(&via_gft));
    Ok(())
}
