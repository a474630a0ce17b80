//! Picard iteration with a certified stopping rule.

use super::orbit::OrbitRecorder;
use super::{Diagnostics, FixedPointResult, SolveOptions, SolveStatus};
use crate::analysis::probe_subsequential_convergence;
use crate::error::{Error, Result};
use crate::mapping::MappingPair;
use crate::point::Point;
use crate::space::MetricSpace;

/// Smallest iteration count `n` with `k^n * d0 / (1 - k) <= tol`: the number
/// of Picard steps that a priori guarantee the certified T-metric bound.
///
/// Computed by direct multiplication rather than logarithms so the returned
/// `n` is exactly the first index at which the loop's own ledger passes.
pub fn a_priori_iterations(k: f64, d0: f64, tol: f64) -> Result<u64> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::param(format!("modulus k must lie in (0, 1), got {k}")));
    }
    if !(d0 >= 0.0) {
        return Err(Error::param(format!("d0 must be nonnegative, got {d0}")));
    }
    if !(tol > 0.0) {
        return Err(Error::param(format!("tolerance must be positive, got {tol}")));
    }
    if d0 == 0.0 {
        return Ok(0);
    }
    let mut n = 0u64;
    let mut bound = d0 / (1.0 - k);
    while bound > tol {
        bound *= k;
        n += 1;
        if n > 100_000_000 {
            return Err(Error::param(
                "a priori bound needs more than 1e8 iterations; tolerance unreachable".to_string(),
            ));
        }
    }
    Ok(n)
}

/// Iterate `x_{n+1} = S(x_n)` until both the step residual and (when `k` is
/// supplied) the a priori T-metric bound fall below the tolerance.
///
/// The returned estimate is re-verified: `Converged` means the *returned*
/// point satisfies `d(S x_hat, x_hat) <= tol`, measured by one extra map
/// application beyond the stopping step. Orbits that wander farther than the
/// divergence radius from their start, close a cycle on a finite space, or
/// exhaust `max_iter` come back as `NoConvergence` with the full orbit
/// attached for diagnosis.
pub fn picard_solve(
    space: &MetricSpace,
    pair: &MappingPair,
    x0: Point,
    opts: &SolveOptions,
) -> Result<FixedPointResult> {
    pair.validate_for(space)?;
    if !(opts.tol > 0.0) {
        return Err(Error::param(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if let Some(k) = opts.k {
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::param(format!("modulus k must lie in (0, 1), got {k}")));
        }
    }

    let mut rec = OrbitRecorder::start(space, pair, x0, opts.k)?;
    // On an n-point space any orbit closes a cycle within n steps; if no
    // fixed point appeared by 2n+2 steps none will.
    let cycle_cap = if space.is_finite_points() { Some(2 * space.len() + 2) } else { None };

    let mut candidate: Option<(usize, f64)> = None; // (index of candidate point, its residual)
    let mut escaped = false;

    while rec.steps() < opts.max_iter {
        let residual = rec.step()?;
        let n = rec.steps(); // residual measures x_{n-1} -> x_n

        if let Some((idx, _)) = candidate {
            // the step we just took verifies (or refutes) the previous candidate
            if n == idx + 1 {
                if residual <= opts.tol {
                    return Ok(finish_converged(rec, idx, residual));
                }
                candidate = None;
            }
        }

        if candidate.is_none() && residual <= opts.tol {
            let bound_ok = match opts.k {
                None => true,
                Some(_) => rec.bound_at(n).is_some_and(|b| b <= opts.tol),
            };
            if bound_ok {
                candidate = Some((n, residual));
            }
        }

        if rec.distance_from_start() > opts.divergence_radius {
            escaped = true;
            break;
        }
        if cycle_cap.is_some_and(|cap| rec.steps() >= cap) {
            break;
        }
    }

    // Candidate verified by the loop exit condition: if the loop ended right
    // after accepting a candidate, verify it explicitly.
    if let Some((idx, _)) = candidate {
        if rec.steps() == idx {
            let residual = rec.step()?;
            if residual <= opts.tol {
                return Ok(finish_converged(rec, idx, residual));
            }
        }
    }

    let iterations = rec.steps();
    let last_residual = rec.into_orbit();
    let mut diagnostics = Diagnostics::default();
    if escaped {
        diagnostics.notes.push(format!(
            "orbit left the divergence radius {} after {iterations} steps",
            opts.divergence_radius
        ));
        if last_residual.points.len() >= 10 {
            if let Ok(probe) = probe_subsequential_convergence(space, &pair.t, &last_residual.points)
            {
                diagnostics.subsequential = Some(probe);
            }
        }
    } else if cycle_cap.is_some() {
        diagnostics.notes.push("orbit closed a cycle with no fixed point".to_string());
    } else {
        diagnostics.notes.push(format!("no convergence within {} iterations", iterations));
    }
    Ok(FixedPointResult {
        status: SolveStatus::NoConvergence,
        fixed_point: None,
        t_anchor: None,
        residual: last_residual.residuals.last().copied().unwrap_or(0.0),
        certified_t_bound: None,
        iterations,
        orbit: last_residual,
        diagnostics,
    })
}

fn finish_converged(
    space: &MetricSpace,
    pair: &MappingPair,
    rec: OrbitRecorder<'_>,
    idx: usize,
    verify_residual: f64,
) -> FixedPointResult {
    let _ = pair;
    let _ = space;
    let orbit = rec.into_orbit();
    let fixed_point = orbit.points[idx];
    let t_anchor = orbit.t_images[idx];
    let certified_t_bound = orbit.bound_ledger.as_ref().map(|ledger| ledger[idx]);
    FixedPointResult {
        status: SolveStatus::Converged,
        fixed_point: Some(fixed_point),
        t_anchor: Some(t_anchor),
        residual: verify_residual,
        certified_t_bound,
        iterations: idx,
        orbit,
        diagnostics: Diagnostics::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::Mapping;
    use crate::ProbeVerdict;

    #[test]
    fn a_priori_matches_direct_loop() {
        // k = 1/2, d0 = 1: smallest n with 2 * 2^-n <= 1e-6 is 21
        assert_eq!(a_priori_iterations(0.5, 1.0, 1e-6).unwrap(), 21);
        // equality counts: bound at n = 1 is exactly the tolerance
        assert_eq!(a_priori_iterations(0.25, 3.0, 1.0).unwrap(), 1);
        // a start that is already fixed needs no iterations
        assert_eq!(a_priori_iterations(0.9, 0.0, 1e-12).unwrap(), 0);
        assert!(a_priori_iterations(1.0, 1.0, 1e-6).is_err());
        assert!(a_priori_iterations(0.0, 1.0, 1e-6).is_err());
        assert!(a_priori_iterations(-0.5, 1.0, 1e-6).is_err());
    }

    #[test]
    fn log_and_sqrt_pair_converges_to_four() {
        let space = MetricSpace::interval(1.0, f64::INFINITY).unwrap();
        let pair = MappingPair::new(
            Mapping::parse("ln(x) + 1", 1).unwrap(),
            Mapping::parse("2*sqrt(x)", 1).unwrap(),
        );
        let opts = SolveOptions { tol: 1e-12, k: Some(0.5), ..Default::default() };
        let result = picard_solve(&space, &pair, Point::Real(1.0), &opts).unwrap();
        assert_eq!(result.status, SolveStatus::Converged);
        let fp = result.fixed_point.unwrap().as_real();
        assert!((fp - 4.0).abs() <= 1e-10, "fp = {fp}");
        assert!(result.residual <= 1e-12);
        let bound = result.certified_t_bound.unwrap();
        assert!(bound <= 1e-12 && bound > 0.0);
        // t_anchor = T(fixed point)
        let t_fp = pair.t_apply(&space, result.fixed_point.unwrap()).unwrap();
        assert_eq!(result.t_anchor.unwrap(), t_fp);
        // certificate equals the ledger entry at the final n
        let ledger = result.orbit.bound_ledger.as_ref().unwrap();
        assert_eq!(bound, ledger[result.iterations]);
    }

    #[test]
    fn converged_estimate_reverifies_independently() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        let pair = MappingPair::new(
            Mapping::parse("x^2", 1).unwrap(),
            Mapping::parse("0.5 * sqrt(1 - x^2)", 1).unwrap(),
        );
        let opts = SolveOptions { tol: 1e-12, k: Some(0.25), ..Default::default() };
        let result = picard_solve(&space, &pair, Point::Real(0.0), &opts).unwrap();
        assert_eq!(result.status, SolveStatus::Converged);
        let xhat = result.fixed_point.unwrap();
        let s_xhat = pair.s_apply(&space, xhat).unwrap();
        let recheck = space.distance(s_xhat, xhat);
        assert!(recheck <= opts.tol);
        assert_eq!(recheck, result.residual);
    }

    #[test]
    fn escaping_orbit_reports_no_convergence_with_probe() {
        // S = 2x + 1 escapes; T = exp(-x) still contracts T-images.
        let space = MetricSpace::interval(0.0, f64::INFINITY).unwrap();
        let pair = MappingPair::new(
            Mapping::parse("exp(-x)", 1).unwrap(),
            Mapping::parse("2*x + 1", 1).unwrap(),
        );
        let opts = SolveOptions { k: Some(2.0 / std::f64::consts::E), ..Default::default() };
        let result = picard_solve(&space, &pair, Point::Real(0.0), &opts).unwrap();
        assert_eq!(result.status, SolveStatus::NoConvergence);
        assert!(result.fixed_point.is_none());
        assert!(result.iterations >= 39 && result.iterations <= 42, "{}", result.iterations);
        let probe = result.diagnostics.subsequential.as_ref().unwrap();
        assert_eq!(probe.verdict, ProbeVerdict::EvidenceAgainstSubsequential);
    }

    #[test]
    fn quadratic_shrink_converges_to_zero() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        let pair = MappingPair::classical(Mapping::parse("x^2 / sqrt(2)", 1).unwrap());
        let opts = SolveOptions { tol: 1e-12, ..Default::default() };
        let result = picard_solve(&space, &pair, Point::Real(0.9), &opts).unwrap();
        assert_eq!(result.status, SolveStatus::Converged);
        assert!(result.fixed_point.unwrap().as_real().abs() <= 1e-10);
        // no modulus supplied: residual-only stopping, no certificate
        assert!(result.certified_t_bound.is_none());
    }

    #[test]
    fn finite_cycle_without_fixed_point_stops_early() {
        let space = MetricSpace::finite_from_reals(&[0.0, 0.5, 1.0]).unwrap();
        // swap 0 <-> 1 (indices 0, 2), park 1/2 on the cycle too
        let pair = MappingPair::classical(Mapping::table("swap", vec![2, 2, 0]));
        let result = picard_solve(&space, &pair, Point::Index(0), &SolveOptions::default()).unwrap();
        assert_eq!(result.status, SolveStatus::NoConvergence);
        assert!(result.iterations <= 8);
    }

    #[test]
    fn start_at_fixed_point_converges_immediately() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        let pair = MappingPair::classical(Mapping::parse("x^2", 1).unwrap());
        let result = picard_solve(&space, &pair, Point::Real(0.0), &SolveOptions::default()).unwrap();
        assert_eq!(result.status, SolveStatus::Converged);
        assert_eq!(result.fixed_point.unwrap().as_real(), 0.0);
        assert_eq!(result.residual, 0.0);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        let pair = MappingPair::classical(Mapping::parse("x/2", 1).unwrap());
        let bad_tol = SolveOptions { tol: 0.0, ..Default::default() };
        assert!(picard_solve(&space, &pair, Point::Real(0.5), &bad_tol).is_err());
        let bad_k = SolveOptions { k: Some(1.5), ..Default::default() };
        assert!(picard_solve(&space, &pair, Point::Real(0.5), &bad_k).is_err());
        assert!(picard_solve(&space, &pair, Point::Real(3.0), &SolveOptions::default()).is_err());
    }
}
