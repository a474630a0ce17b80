//! Picard orbits: the iterate sequence with its T-images and residual ledger.

use crate::error::{Error, Result};
use crate::mapping::MappingPair;
use crate::point::Point;
use crate::space::MetricSpace;

/// The recorded iterate sequence `x_{n+1} = S(x_n)` together with T-images,
/// step residuals, and (when a modulus is known) the theoretical per-step
/// bound `k^n * d(Tx_0, Tx_1) / (1 - k)`.
///
/// Residual lists are one shorter than the point list: entry `n` measures
/// the step from `x_n` to `x_{n+1}`. The bound ledger has one entry per
/// point.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub points: Vec<Point>,
    pub t_images: Vec<Point>,
    pub residuals: Vec<f64>,
    pub t_residuals: Vec<f64>,
    pub bound_ledger: Option<Vec<f64>>,
}

impl Orbit {
    pub fn x0(&self) -> Point {
        self.points[0]
    }

    pub fn last(&self) -> Point {
        *self.points.last().unwrap()
    }

    /// Number of S-applications recorded.
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }
}

/// Incrementally builds an orbit, enforcing domain closure at every step.
pub(crate) struct OrbitRecorder<'a> {
    space: &'a MetricSpace,
    pair: &'a MappingPair,
    k: Option<f64>,
    points: Vec<Point>,
    t_images: Vec<Point>,
    residuals: Vec<f64>,
    t_residuals: Vec<f64>,
}

impl<'a> OrbitRecorder<'a> {
    pub fn start(
        space: &'a MetricSpace,
        pair: &'a MappingPair,
        x0: Point,
        k: Option<f64>,
    ) -> Result<Self> {
        if !space.contains(x0) {
            return Err(Error::Param(format!(
                "start point {} is outside the domain",
                space.display_point(x0)
            )));
        }
        let x0 = space.clamp(x0);
        let t0 = pair.t_apply(space, x0)?;
        Ok(OrbitRecorder {
            space,
            pair,
            k,
            points: vec![x0],
            t_images: vec![t0],
            residuals: Vec::new(),
            t_residuals: Vec::new(),
        })
    }

    /// Apply `S` once; returns the step residual `d(x_{n+1}, x_n)`.
    pub fn step(&mut self) -> Result<f64> {
        let current = *self.points.last().unwrap();
        let next = self.pair.s_apply(self.space, current)?;
        let t_next = self.pair.t_apply(self.space, next)?;
        let residual = self.space.distance(next, current);
        let t_prev = *self.t_images.last().unwrap();
        self.t_residuals.push(self.space.distance(t_next, t_prev));
        self.residuals.push(residual);
        self.points.push(next);
        self.t_images.push(t_next);
        Ok(residual)
    }

    pub fn last(&self) -> Point {
        *self.points.last().unwrap()
    }

    pub fn last_t_image(&self) -> Point {
        *self.t_images.last().unwrap()
    }

    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn distance_from_start(&self) -> f64 {
        self.space.distance(self.last(), self.points[0])
    }

    /// `k^n * d(Tx_0, Tx_1) / (1 - k)`, the certified T-metric bound after
    /// `n` steps. None when no modulus was supplied or no step exists yet.
    pub fn bound_at(&self, n: usize) -> Option<f64> {
        let k = self.k?;
        let d0 = *self.t_residuals.first()?;
        Some(k.powi(n as i32) * d0 / (1.0 - k))
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_orbit(self) -> Orbit {
        let bound_ledger = match (self.k, self.t_residuals.first()) {
            (Some(k), Some(&d0)) => Some(
                (0..self.points.len())
                    .map(|n| k.powi(n as i32) * d0 / (1.0 - k))
                    .collect(),
            ),
            _ => None,
        };
        Orbit {
            points: self.points,
            t_images: self.t_images,
            residuals: self.residuals,
            t_residuals: self.t_residuals,
            bound_ledger,
        }
    }
}

/// Record a fixed-length orbit without any stopping rule. Useful for
/// convergence diagnostics and for checking the Cauchy ledger directly.
pub fn run_orbit(
    space: &MetricSpace,
    pair: &MappingPair,
    x0: Point,
    steps: usize,
    k: Option<f64>,
) -> Result<Orbit> {
    pair.validate_for(space)?;
    if let Some(k) = k {
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::param(format!("modulus k must lie in (0, 1), got {k}")));
        }
    }
    let mut rec = OrbitRecorder::start(space, pair, x0, k)?;
    for _ in 0..steps {
        rec.step()?;
    }
    Ok(rec.into_orbit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::Mapping;

    #[test]
    fn orbit_bookkeeping_is_consistent() {
        let space = MetricSpace::interval(1.0, f64::INFINITY).unwrap();
        let pair = MappingPair::new(
            Mapping::parse("ln(x) + 1", 1).unwrap(),
            Mapping::parse("2*sqrt(x)", 1).unwrap(),
        );
        let orbit = run_orbit(&space, &pair, Point::Real(1.0), 10, Some(0.5)).unwrap();
        assert_eq!(orbit.points.len(), 11);
        assert_eq!(orbit.t_images.len(), 11);
        assert_eq!(orbit.residuals.len(), 10);
        assert_eq!(orbit.t_residuals.len(), 10);
        assert_eq!(orbit.bound_ledger.as_ref().unwrap().len(), 11);
        // points[n+1] = S(points[n]) and t_images[n] = T(points[n])
        for n in 0..10 {
            let s_xn = pair.s_apply(&space, orbit.points[n]).unwrap();
            assert_eq!(orbit.points[n + 1], s_xn);
            let t_xn = pair.t_apply(&space, orbit.points[n]).unwrap();
            assert_eq!(orbit.t_images[n], t_xn);
        }
        // ledger starts at d(Tx0, Tx1)/(1-k)
        let ledger = orbit.bound_ledger.as_ref().unwrap();
        assert!((ledger[0] - orbit.t_residuals[0] / 0.5).abs() < 1e-15);
        assert!((ledger[1] / ledger[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn orbit_rejects_outside_start() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        let pair = MappingPair::classical(Mapping::parse("x/2", 1).unwrap());
        assert!(run_orbit(&space, &pair, Point::Real(2.0), 5, None).is_err());
    }

    #[test]
    fn orbit_surfaces_mid_run_domain_escape() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        let pair = MappingPair::classical(Mapping::parse("2*x + 0.1", 1).unwrap());
        let err = run_orbit(&space, &pair, Point::Real(0.3), 5, None).unwrap_err();
        assert!(matches!(err, Error::DomainViolation { .. }));
    }
}
