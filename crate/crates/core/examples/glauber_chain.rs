//! Glauber dynamics of a 4-spin Ising ring: stationary law, spectral bound
//! and filter errors.
//!
//! ```text
//! cargo run --example glauber_chain -- 0.2 1.0
//! ```

use ergodic_filters::chains::{
    build_glauber_cycle, gibbs_distribution, glauber_lambda_low, GlauberParams, SpinState,
};
use ergodic_filters::harness::{run_experiment, ExperimentConfig};
use ergodic_filters::markov::spectral_decomposition;
use ergodic_filters::FilterKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let beta: f64 = args.next().map_or(Ok(0.2), |s| s.parse())?;
    let coupling: f64 = args.next().map_or(Ok(1.0), |s| s.parse())?;
    let p = 4;

    let params = GlauberParams::uniform(p, beta, coupling)?;
    let pi = gibbs_distribution(&params)?;
    println!("Gibbs distribution (β={beta}, J={coupling}):");
    for (x, prob) in pi.iter().enumerate() {
        let spins: String = (0..p)
            .map(|w| {
                if SpinState::new(x as u32, p).spin(w) > 0.0 {
                    '+'
                } else {
                    '-'
                }
            })
            .collect();
        println!("  {spins}  {prob:.5}");
    }

    let chain = build_glauber_cycle(&params)?;
    let gap = spectral_decomposition(&chain)?
        .spectral_gap()
        .unwrap_or(f64::NAN);
    println!(
        "λ_low = {:.6}, true spectral gap = {gap:.6}",
        glauber_lambda_low(&params)?
    );

    let mut config = ExperimentConfig::reference_glauber();
    config.beta = beta;
    config.coupling = coupling;
    let run = run_experiment(&config)?;
    for row in run.rows.iter().filter(|r| r.degree % 5 == 0) {
        let cells: Vec<String> = FilterKind::ALL
            .iter()
            .map(|&k| format!("{k} {:.2e}", row.error(k)))
            .collect();
        println!("K={:>2}  {}", row.degree, cells.join("  "));
    }
    Ok(())
}
