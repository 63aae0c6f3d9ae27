//! Frequency response of the Chebyshev filter: its sup-norm on the stopband
//! and the points where it equioscillates.
//!
//! ```text
//! cargo run --example chebyshev_minimax -- 8 0.0733
//! ```

use ergodic_filters::filters::{chebyshev_scalar, chebyshev_scalar_at_zero, ergodic_scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let degree: usize = args.next().map_or(Ok(8), |s| s.parse())?;
    let lambda: f64 = args.next().map_or(Ok(0.0733), |s| s.parse())?;

    let t_at_zero = chebyshev_scalar_at_zero(degree, lambda)?;
    println!(
        "K={degree}, λ_low={lambda}: predicted stopband maximum 1/|T_K(m(0))| = {:.3e}",
        1.0 / t_at_zero[degree].abs()
    );

    let n = 10_000;
    let grid: Vec<f64> = (0..n)
        .map(|i| lambda + (2.0 - lambda) * i as f64 / (n - 1) as f64)
        .collect();
    let values: Vec<f64> = grid
        .iter()
        .map(|&z| chebyshev_scalar(z, degree, lambda))
        .collect::<Result<_, _>>()?;
    let sup = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let ergodic_sup = grid
        .iter()
        .map(|&z| ergodic_scalar(z, degree + 1).abs())
        .fold(0.0, f64::max);
    println!("grid maximum: chebyshev {sup:.3e}, ergodic average {ergodic_sup:.3e}");

    println!("alternation points:");
    let mut last_sign = 0.0;
    for i in 0..n {
        let here = values[i].abs();
        let left = if i > 0 { values[i - 1].abs() } else { 0.0 };
        let right = values.get(i + 1).map_or(0.0, |v| v.abs());
        let sign = values[i].signum();
        if here >= left && here >= right && here > 0.999 * sup && sign != last_sign {
            println!("  z = {:.4}  p(z) = {:+.3e}", grid[i], values[i]);
            last_sign = sign;
        }
    }
    Ok(())
}
