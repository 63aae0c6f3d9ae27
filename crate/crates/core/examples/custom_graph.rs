//! Filtering on a chain built from your own graph, advancing the filters one
//! degree at a time.
//!
//! The graph is a "barbell": two 5-cliques joined by a single edge, which
//! makes the spectral gap small.
//!
//! ```text
//! cargo run --example custom_graph
//! ```

use ergodic_filters::chains::random_walk_on_graph;
use ergodic_filters::filters::{max_abs_error, ChebyshevState, ErgodicState, LegendreState};
use ergodic_filters::markov::spectral_decomposition;
use ergodic_filters::{ChainModel, GraphSignal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut edges = Vec::new();
    for offset in [0, 5] {
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((offset + a, offset + b));
            }
        }
    }
    edges.push((4, 5));
    let validated = random_walk_on_graph(10, &edges)?;

    // a placeholder bound, replaced by the true gap below
    let chain = ChainModel::from_validated(validated, 1.0)?;
    let gap = spectral_decomposition(&chain)?
        .spectral_gap()
        .ok_or("no gap")?;
    let chain = chain.with_lambda_low(gap)?;
    println!("spectral gap {gap:.5}");

    let f = GraphSignal::new((0..10).map(|x| if x < 5 { 1.0 } else { 0.0 }).collect());
    let pi = chain.pi();
    let mut ergodic = ErgodicState::new(&chain, &f)?;
    let mut chebyshev = ChebyshevState::new(&chain, &f, gap)?;
    let mut legendre = LegendreState::new(&chain, &f, gap)?;
    println!(
        "{:>3} {:>11} {:>11} {:>11}",
        "K", "ergodic", "chebyshev", "legendre"
    );
    for k in 1..=30 {
        ergodic.advance();
        chebyshev.advance();
        legendre.advance();
        if k % 5 == 0 {
            println!(
                "{k:>3} {:>11.3e} {:>11.3e} {:>11.3e}",
                max_abs_error(&ergodic.output(), &f, pi)?,
                max_abs_error(&chebyshev.output(), &f, pi)?,
                max_abs_error(&legendre.output(), &f, pi)?,
            );
        }
    }
    Ok(())
}
