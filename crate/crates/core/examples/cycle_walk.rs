//! Error curves for the random walk on an 11-cycle.
//!
//! ```text
//! cargo run --example cycle_walk
//! ```

use ergodic_filters::harness::{run_experiment, ExperimentConfig};
use ergodic_filters::FilterKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let run = run_experiment(&ExperimentConfig::reference_cycle_walk())?;
    println!(
        "cycle p={}  λ_low={:.4}  π(f)={:.4}",
        run.metadata.p, run.metadata.lambda_low, run.metadata.pi_f
    );
    print!("{:>3}", "K");
    for kind in FilterKind::ALL {
        print!("{kind:>12}");
    }
    println!();
    for row in &run.rows {
        print!("{:>3}", row.degree);
        for kind in FilterKind::ALL {
            print!("{:>12.3e}", row.error(kind));
        }
        println!();
    }
    Ok(())
}
