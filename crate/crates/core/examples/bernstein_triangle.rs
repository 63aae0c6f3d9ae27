//! Bernstein approximation of the triangle low-pass prototype.
//!
//! ```text
//! cargo run --example bernstein_triangle -- 0.0733
//! ```

use ergodic_filters::filters::{bernstein_scalar, triangle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda: f64 = std::env::args().nth(1).map_or(Ok(0.0733), |s| s.parse())?;
    println!(
        "{:>5} {:>12} {:>12} {:>12}",
        "K", "sup error", "bound", "B_K(λ_low)"
    );
    for k in [1, 4, 16, 64, 256, 1024] {
        let mut sup = 0.0_f64;
        for i in 0..=4000 {
            let z = 2.0 * i as f64 / 4000.0;
            sup = sup.max((triangle(z, lambda)? - bernstein_scalar(z, k, lambda)).abs());
        }
        let bound = 1.5 * (2.0 / ((k as f64).sqrt() * lambda)).min(1.0);
        println!(
            "{k:>5} {sup:>12.4} {bound:>12.4} {:>12.4}",
            bernstein_scalar(lambda, k, lambda)
        );
    }
    Ok(())
}
