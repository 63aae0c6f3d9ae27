//! Polynomial graph filters for accelerating ergodic averages of reversible
//! Markov chains.
//!
//! A chain with transition matrix `P` and stationary distribution `π` has
//! Laplacian `L = I − P`. Any polynomial `p` with `p(0) = 1` maps an
//! observable `f` to `p(L) f`, whose entries approach `π(f)` as `p` gets
//! small on the nonzero spectrum. The plain ergodic average is one such
//! polynomial; [`filters`] provides it alongside Bernstein, Chebyshev and
//! Legendre filters that use a lower bound `λ_low` on the spectral gap.
//!
//! - [`densela`]: small dense matrices, Jacobi eigensolver, linear solves.
//! - [`markov`]: chain validation, Laplacian, π-geometry and the graph
//!   Fourier transform.
//! - [`chains`]: cycle random walks and Glauber dynamics of Ising rings.
//! - [`filters`]: the filter families, scalar and vector forms.
//! - [`harness`]: experiment runner, CSV/JSON output and the CLI.
//!
//! ```
//! use ergodic_filters::chains::{build_cycle_walk, CycleWalkParams};
//! use ergodic_filters::filters::max_abs_error;
//! use ergodic_filters::{FilterKind, GraphSignal};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let chain = build_cycle_walk(CycleWalkParams::new(11)?)?;
//! let f = GraphSignal::new(vec![8.53, 6.22, 3.50, 5.13, 4.01, 0.75, 2.39, 1.23, 1.83, 2.39, 4.17]);
//! for kind in FilterKind::ALL {
//!     let out = kind.apply(&chain, &f, 20, chain.lambda_low())?;
//!     println!("{kind:>10}: {:.2e}", max_abs_error(&out, &f, chain.pi())?);
//! }
//! # Ok(())
//! # }
//! ```

pub mod chains;
pub mod densela;
pub mod filters;
pub mod harness;
pub mod markov;

pub use filters::FilterKind;
pub use markov::{ChainModel, GraphSignal};
