//! The two experiment chains: the simple random walk on an odd cycle and
//! single-site heat-bath (Glauber) dynamics for an Ising ring.
//!
//! Spin states are indexed by bitmask: bit `w` of the state index is set
//! when vertex `w` carries spin `+1`. Rows and columns of the Glauber
//! transition matrix, and entries of any signal on it, follow that order.

use thiserror::Error;

use crate::densela::{self, LinalgError, Matrix};
use crate::markov::{
    self, ChainModel, MarkovError, StationaryDistribution, TransitionMatrix, ValidatedChain,
};

/// Largest ring for which the Gibbs law is enumerated (2^20 states).
pub const MAX_GIBBS_SITES: usize = 20;

/// Largest ring for which the dense 2^p x 2^p transition matrix is built.
pub const MAX_GLAUBER_SITES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("cycle length must be an odd integer >= 3, got {0}")]
    InvalidCycleLength(usize),
    #[error("ring length must be >= 3, got {0}")]
    RingTooShort(usize),
    #[error("ring length {p} exceeds the enumeration cap of {cap} sites")]
    TooManySites { p: usize, cap: usize },
    #[error("inverse temperature must be finite and >= 0, got {0}")]
    InvalidBeta(f64),
    #[error("expected {expected} couplings, found {found}")]
    CouplingCount { expected: usize, found: usize },
    #[error("coupling {0} is not finite")]
    NonFiniteCoupling(usize),
    #[error("graph edge ({0}, {1}) is invalid")]
    InvalidEdge(usize, usize),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Odd cycle length for the random walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleWalkParams {
    p: usize,
}

impl CycleWalkParams {
    pub fn new(p: usize) -> Result<Self, ChainError> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(ChainError::InvalidCycleLength(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> usize {
        self.p
    }
}

/// Simple random walk on the cycle `Z_p` with `π = 1/p`.
pub fn build_cycle_walk(params: CycleWalkParams) -> Result<ChainModel, ChainError> {
    let p = params.p;
    let mut m = Matrix::zeros(p, p);
    for x in 0..p {
        m[(x, (x + 1) % p)] = 0.5;
        m[(x, (x + p - 1) % p)] = 0.5;
    }
    let chain = markov::validate_chain(
        TransitionMatrix::new(m)?,
        StationaryDistribution::uniform(p),
    )?;
    Ok(ChainModel::from_validated(chain, cycle_lambda_low(params))?)
}

/// Lower bound `8p / ((p−1)²(p+1))` on the spectral gap of the cycle walk.
pub fn cycle_lambda_low(params: CycleWalkParams) -> f64 {
    let p = params.p as f64;
    8.0 * p / ((p - 1.0) * (p - 1.0) * (p + 1.0))
}

/// Simple random walk on an undirected simple graph, reversible with respect
/// to `π(x) = d(x) / 2|E|`.
pub fn random_walk_on_graph(
    n: usize,
    edges: &[(usize, usize)],
) -> Result<ValidatedChain, ChainError> {
    let mut adjacency = vec![vec![false; n]; n];
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(ChainError::InvalidEdge(a, b));
        }
        adjacency[a][b] = true;
        adjacency[b][a] = true;
    }
    let degrees: Vec<usize> = adjacency
        .iter()
        .map(|row| row.iter().filter(|&&e| e).count())
        .collect();
    if let Some(v) = degrees.iter().position(|&d| d == 0) {
        return Err(ChainError::IsolatedVertex(v));
    }
    let total: usize = degrees.iter().sum();
    let mut m = Matrix::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            if adjacency[x][y] {
                m[(x, y)] = 1.0 / degrees[x] as f64;
            }
        }
    }
    let pi = degrees.iter().map(|&d| d as f64 / total as f64).collect();
    Ok(markov::validate_chain(
        TransitionMatrix::new(m)?,
        StationaryDistribution::new(pi)?,
    )?)
}

/// Ising ring with edge couplings `J_i = J_{i,i+1}` (indices mod `p`).
#[derive(Debug, Clone, PartialEq)]
pub struct GlauberParams {
    beta: f64,
    couplings: Vec<f64>,
}

impl GlauberParams {
    pub fn new(beta: f64, couplings: Vec<f64>) -> Result<Self, ChainError> {
        if couplings.len() < 3 {
            return Err(ChainError::RingTooShort(couplings.len()));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(ChainError::InvalidBeta(beta));
        }
        if let Some(i) = couplings.iter().position(|j| !j.is_finite()) {
            return Err(ChainError::NonFiniteCoupling(i));
        }
        Ok(Self { beta, couplings })
    }

    /// Every edge gets the same coupling.
    pub fn uniform(p: usize, beta: f64, coupling: f64) -> Result<Self, ChainError> {
        Self::new(beta, vec![coupling; p])
    }

    pub fn p(&self) -> usize {
        self.couplings.len()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    fn coupling(&self, i: usize) -> f64 {
        self.couplings[i % self.p()]
    }

    fn check_cap(&self, cap: usize) -> Result<(), ChainError> {
        if self.p() > cap {
            return Err(ChainError::TooManySites { p: self.p(), cap });
        }
        Ok(())
    }
}

/// A configuration of `p` spins packed into the low bits of a `u32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinState {
    bits: u32,
    p: usize,
}

impl SpinState {
    pub fn new(bits: u32, p: usize) -> Self {
        assert!(p <= 32, "at most 32 spins fit in a SpinState");
        let mask = if p == 32 { u32::MAX } else { (1u32 << p) - 1 };
        Self {
            bits: bits & mask,
            p,
        }
    }

    pub fn from_spins(spins: &[i8]) -> Self {
        let bits = spins
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0)
            .fold(0u32, |acc, (w, _)| acc | (1 << w));
        Self::new(bits, spins.len())
    }

    /// Row/column index in the transition matrix.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn spin(&self, w: usize) -> f64 {
        if (self.bits >> (w % self.p)) & 1 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn flipped(&self, w: usize) -> Self {
        Self::new(self.bits ^ (1 << w), self.p)
    }

    /// Global spin flip `x -> -x`.
    pub fn negated(&self) -> Self {
        Self::new(!self.bits, self.p)
    }
}

/// `H(x) = −Σ_i J_i x(i) x(i+1)`, each ring edge counted once.
pub fn glauber_energy(x: SpinState, params: &GlauberParams) -> f64 {
    let p = params.p();
    -(0..p)
        .map(|i| params.coupling(i) * x.spin(i) * x.spin(i + 1))
        .sum::<f64>()
}

/// Local field `S(x, w) = Σ_{u ~ w} J_{u,w} x(u)`.
fn local_field(x: SpinState, w: usize, params: &GlauberParams) -> f64 {
    let p = params.p();
    let left = (w + p - 1) % p;
    params.coupling(left) * x.spin(left) + params.coupling(w) * x.spin(w + 1)
}

/// Gibbs law `e^{−βH(x)} / Z(β)` by full enumeration.
pub fn gibbs_distribution(params: &GlauberParams) -> Result<StationaryDistribution, ChainError> {
    params.check_cap(MAX_GIBBS_SITES)?;
    let p = params.p();
    let energies: Vec<f64> = (0..1u32 << p)
        .map(|bits| glauber_energy(SpinState::new(bits, p), params))
        .collect();
    // shift by the ground energy so the exponentials cannot overflow
    let ground = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = energies
        .iter()
        .map(|h| (-params.beta * (h - ground)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    Ok(StationaryDistribution::new(
        weights.into_iter().map(|w| w / z).collect(),
    )?)
}

/// Heat-bath probability of setting spin `w` to `target` given the rest of `x`.
fn heat_bath(x: SpinState, w: usize, target: f64, params: &GlauberParams) -> f64 {
    let a = params.beta * target * local_field(x, w, params);
    // e^a / (e^a + e^{-a})
    1.0 / (1.0 + (-2.0 * a).exp())
}

/// Transition matrix of single-site heat-bath dynamics on the ring.
pub fn glauber_transition(params: &GlauberParams) -> Result<TransitionMatrix, ChainError> {
    params.check_cap(MAX_GLAUBER_SITES)?;
    let p = params.p();
    let n = 1usize << p;
    let inv_p = 1.0 / p as f64;
    let mut m = Matrix::zeros(n, n);
    for bits in 0..n as u32 {
        let x = SpinState::new(bits, p);
        for w in 0..p {
            let stay = heat_bath(x, w, x.spin(w), params);
            m[(x.index(), x.index())] += inv_p * stay;
            m[(x.index(), x.flipped(w).index())] += inv_p * (1.0 - stay);
        }
    }
    Ok(TransitionMatrix::new(m)?)
}

/// Glauber chain with its Gibbs law and exact spectral-gap value as λ_low.
pub fn build_glauber_cycle(params: &GlauberParams) -> Result<ChainModel, ChainError> {
    let p = glauber_transition(params)?;
    let pi = gibbs_distribution(params)?;
    let lambda_low = glauber_lambda_low(params)?;
    Ok(ChainModel::new(p, pi, lambda_low)?)
}

/// The `p x p` cyclic band matrix whose top eigenvalue fixes the gap:
/// `M(i,i−1) = s_{i−1}/(c_{i−1}+c_i)`, `M(i,i+1) = s_i/(c_{i−1}+c_i)` with
/// `s_i = sinh(2βJ_i)` and `c_i = cosh(2βJ_i)`.
pub fn glauber_m_matrix(params: &GlauberParams) -> Matrix {
    let p = params.p();
    let (s, c) = band_terms(params);
    let mut m = Matrix::zeros(p, p);
    for i in 0..p {
        let prev = (i + p - 1) % p;
        let denom = c[prev] + c[i];
        m[(i, prev)] += s[prev] / denom;
        m[(i, (i + 1) % p)] += s[i] / denom;
    }
    m
}

fn band_terms(params: &GlauberParams) -> (Vec<f64>, Vec<f64>) {
    params
        .couplings
        .iter()
        .map(|j| {
            let x = 2.0 * params.beta * j;
            (x.sinh(), x.cosh())
        })
        .unzip()
}

/// `λ_low = (1 − γ₁)/p`, with `γ₁` the largest eigenvalue of
/// [`glauber_m_matrix`].
///
/// `M = D⁻¹A` with `A` symmetric and `D = diag(c_{i−1} + c_i)` positive, so
/// the eigenvalues are those of the symmetric `D^{-1/2} A D^{-1/2}`.
pub fn glauber_lambda_low(params: &GlauberParams) -> Result<f64, ChainError> {
    let p = params.p();
    let (s, c) = band_terms(params);
    let d: Vec<f64> = (0..p).map(|i| c[(i + p - 1) % p] + c[i]).collect();
    let mut sym = Matrix::zeros(p, p);
    for i in 0..p {
        let next = (i + 1) % p;
        let v = s[i] / (d[i] * d[next]).sqrt();
        sym[(i, next)] += v;
        sym[(next, i)] += v;
    }
    let eig = densela::symmetric_eigen(&sym, 1e-14)?;
    let gamma_1 = eig.eigenvalues[p - 1];
    Ok((1.0 - gamma_1) / p as f64)
}
