//! Least-squares filter: the Legendre recursion against a direct
//! constrained solve, degree by degree.
//!
//! ```text
//! cargo run --example legendre_least_squares -- 0.155
//! ```

use ergodic_filters::filters::{l2_optimal_oracle, legendre_scalar_at_zero};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda: f64 = std::env::args().nth(1).map_or(Ok(0.155), |s| s.parse())?;
    println!(
        "{:>3} {:>14} {:>14} {:>10}",
        "K", "1/ΣL̃_k(0)²", "direct solve", "rel diff"
    );
    for k in 0..=15 {
        let recursion = legendre_scalar_at_zero(k, lambda)?.optimal_objective();
        let direct = l2_optimal_oracle(k, lambda)?.objective;
        println!(
            "{k:>3} {recursion:>14.6e} {direct:>14.6e} {:>10.1e}",
            (recursion - direct).abs() / direct
        );
    }
    let coeffs = legendre_scalar_at_zero(10, lambda)?;
    println!("γ_k for K=10: {:.4?}", coeffs.gamma);
    Ok(())
}
