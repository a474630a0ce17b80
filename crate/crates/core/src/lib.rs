//! Fixed-point computation and contraction analysis relative to a transform map.
//!
//! The classical Banach setup asks for a self-map `S` on a complete metric
//! space whose distances contract uniformly: `d(Sx, Sy) <= k * d(x, y)` with
//! `k < 1`. This crate works with the weaker, transformed variant: given a
//! second self-map `T`, the map `S` contracts *through* `T` when
//! `d(TSx, TSy) <= k * d(Tx, Ty)`. Maps that expand plainly (say `S(x) = 2x`)
//! can still contract through a suitable `T`, and Picard iteration on `S`
//! then carries a convergence certificate in the T-image metric.
//!
//! What lives where:
//!
//! * [`space`] — metric spaces (real intervals and finite point sets),
//!   metric-axiom checking, the on-disk finite-space format.
//! * [`mapping`] — self-maps (expressions, closures, lookup tables) and the
//!   `(T, S)` pair under study.
//! * [`sampler`] — deterministic pair samplers used by the estimators.
//! * [`analysis`] — contraction-modulus estimation and classification, plus
//!   injectivity / subsequential-convergence / continuity probes.
//! * [`engine`] — Picard iteration with certified stopping, grid
//!   minimization of `phi(y) = d(TSy, Ty)` on compact domains, and the
//!   power trick (certifying `S^n` instead of `S`).
//! * [`oracle`] — exhaustive validation of the fixed-point theorems over all
//!   map pairs on small finite spaces.
//! * [`expr`], [`config`], [`gallery`], [`report`] — the expression grammar,
//!   problem-file format, built-in regression gallery, and report writers
//!   behind the `tcontract` command-line tool.

pub mod analysis;
pub mod config;
pub mod engine;
pub mod error;
pub mod expr;
pub mod gallery;
pub mod mapping;
pub mod oracle;
pub mod point;
pub mod report;
pub mod sampler;
pub mod space;

pub use analysis::{
    estimate_modulus, check_classical_contraction, check_injectivity,
    probe_continuity, probe_subsequential_convergence, AnalysisOptions,
    ContractionReport, ContractionVerdict, ConvergenceProbeReport, InjectivityVerdict,
    ProbeVerdict,
};
pub use config::ProblemConfig;
pub use engine::{
    a_priori_iterations, phi_minimize, picard_solve, power_trick_solve, run_orbit,
    FixedPointResult, Orbit, PhiProfile, SolveOptions, SolveStatus,
};
pub use error::{Error, Result};
pub use mapping::{Mapping, MappingPair};
pub use oracle::{edelstein_check, enumerate_and_check, EdelsteinVerdict, ExhaustiveRunReport};
pub use point::Point;
pub use sampler::{PairSampler, SampleStrategy};
pub use space::{AxiomReport, MetricSpace};

/// Comparison slack for `f64` distance inequalities throughout the crate.
///
/// Distances are plain doubles; theoretical inequalities (contraction bounds,
/// Cauchy estimates) are asserted up to this additive slack, which sits far
/// below every distance gap in the supported problem classes.
pub const CMP_SLACK: f64 = 1e-12;

/// Two points closer than this are treated as the same point when sampling
/// and when deciding whether `Tx = Ty`.
pub const DISTINCT_EPS: f64 = 1e-12;
