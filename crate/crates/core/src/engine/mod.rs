//! Fixed-point computation: Picard iteration with a certified stopping rule,
//! grid minimization of `phi(y) = d(TSy, Ty)` on compact domains, and the
//! power trick of certifying an iterate `S^n` in place of `S`.
//!
//! The convergence certificate lives in the T-image metric. When a modulus
//! `k` is known, the tail of the T-image orbit is Cauchy with
//! `d(Tx_n, Tx_m) <= (k^n + k^m) / (1 - k) * d(Tx_0, Tx_1)`, so the solver
//! can bound `d(T x_hat, T x_star)` a priori. No attempt is made to convert
//! that into a bound in the original metric: that would need a modulus of
//! continuity for `T^{-1}`, which is not available in general. The raw
//! residual `d(S x_hat, x_hat)` is reported alongside.

mod orbit;
mod phi;
mod picard;
mod power;

pub use orbit::{run_orbit, Orbit};
pub use phi::{phi_minimize, PhiProfile};
pub use picard::{a_priori_iterations, picard_solve};
pub use power::power_trick_solve;

use crate::analysis::ConvergenceProbeReport;
use crate::point::Point;

/// How a solve ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Residual (and certificate, when a modulus was supplied) met the
    /// tolerance; the returned point re-verifies.
    Converged,
    /// Iteration budget, divergence radius, or a closed cycle without a
    /// fixed point.
    NoConvergence,
    /// A theorem hypothesis failed observably (no qualifying power, or the
    /// phi descent property broke).
    HypothesisFailure,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::NoConvergence => "no-convergence",
            SolveStatus::HypothesisFailure => "hypothesis-failure",
        }
    }
}

/// Solver knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Contraction modulus through `T`, when known. Enables the a priori
    /// T-metric certificate and tightens the stopping rule.
    pub k: Option<f64>,
    /// Orbits wandering this far from their start are declared divergent.
    pub divergence_radius: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-10, max_iter: 1_000_000, k: None, divergence_radius: 1e12 }
    }
}

/// Hypothesis-probe summaries attached to a solve.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Subsequential-convergence probe over the orbit itself, attached when
    /// an orbit escapes.
    pub subsequential: Option<ConvergenceProbeReport>,
    /// Which power `S^n` was certified (power-trick solves).
    pub power_n: Option<usize>,
    /// Fixed points found on a finite space when uniqueness was expected.
    pub uniqueness_violation: Option<Vec<Point>>,
    pub notes: Vec<String>,
}

/// Outcome of a fixed-point solve.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointResult {
    pub status: SolveStatus,
    /// The fixed-point estimate (`b` in the convergence argument).
    pub fixed_point: Option<Point>,
    /// `T` of the estimate: the limit the T-image orbit anchors to.
    pub t_anchor: Option<Point>,
    /// `d(S x_hat, x_hat)` at the returned estimate; for failed solves, the
    /// last observed residual.
    pub residual: f64,
    /// A priori bound on `d(T x_hat, T x_star)`: `k^n / (1-k) * d(Tx_0, Tx_1)`
    /// at the final iteration count. Present only when `k` was supplied and
    /// the solve converged.
    pub certified_t_bound: Option<f64>,
    pub iterations: usize,
    pub orbit: Orbit,
    pub diagnostics: Diagnostics,
}
