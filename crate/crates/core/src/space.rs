//! Metric spaces: closed real intervals and finite point sets.
//!
//! Intervals use the metric induced by the reals, `d(x, y) = |x - y|`, so the
//! axioms hold by construction. Finite spaces carry an explicit distance
//! matrix which may be anything the user wrote down; [`MetricSpace::check_metric_axioms`]
//! reports every violation so bad matrices can be rejected up front.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::point::Point;

/// Point domain of a [`MetricSpace`].
#[derive(Debug, Clone)]
pub enum Domain {
    /// Closed interval `[lo, hi]`; `hi` may be `f64::INFINITY`.
    Interval { lo: f64, hi: f64 },
    /// Finite point set given by a square distance matrix, row-major.
    Finite { dist: Vec<Vec<f64>>, labels: Vec<String> },
}

/// A metric space instance.
///
/// `complete` and `compact` are structural facts, not sampled estimates:
/// closed intervals are complete, compact exactly when bounded; finite
/// spaces are both. Compactness implies completeness by construction.
#[derive(Debug, Clone)]
pub struct MetricSpace {
    domain: Domain,
    complete: bool,
    compact: bool,
}

/// One metric-axiom violation in a finite space's distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum AxiomViolation {
    /// `d[i][j] != d[j][i]`.
    Asymmetric { i: usize, j: usize, dij: f64, dji: f64 },
    /// `d[i][i] != 0`.
    NonzeroDiagonal { i: usize, value: f64 },
    /// `d[i][j] = 0` for distinct points.
    ZeroOffDiagonal { i: usize, j: usize },
    /// Negative entry.
    Negative { i: usize, j: usize, value: f64 },
    /// `d[i][k] > d[i][j] + d[j][k]` (reported once per `i < k`).
    Triangle { i: usize, j: usize, k: usize, lhs: f64, rhs: f64 },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Asymmetric { i, j, dij, dji } => {
                write!(f, "asymmetric: d[{i}][{j}] = {dij} but d[{j}][{i}] = {dji}")
            }
            AxiomViolation::NonzeroDiagonal { i, value } => {
                write!(f, "nonzero diagonal: d[{i}][{i}] = {value}")
            }
            AxiomViolation::ZeroOffDiagonal { i, j } => {
                write!(f, "zero distance between distinct points {i} and {j}")
            }
            AxiomViolation::Negative { i, j, value } => {
                write!(f, "negative distance: d[{i}][{j}] = {value}")
            }
            AxiomViolation::Triangle { i, j, k, lhs, rhs } => {
                write!(f, "triangle violation ({i},{j},{k}): d[{i}][{k}] = {lhs} > {rhs} = d[{i}][{j}] + d[{j}][{k}]")
            }
        }
    }
}

/// Outcome of a metric-axiom check; empty means the matrix is a metric.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_metric(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Points whose computed image lies within this distance outside an interval
/// are clamped back in; beyond it the evaluation is a domain violation.
pub(crate) const DOMAIN_EPS: f64 = 1e-9;

impl MetricSpace {
    /// Closed interval `[lo, hi]`. Completeness and compactness are derived.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() {
            return Err(Error::structural(format!("interval lower bound must be finite, got {lo}")));
        }
        if hi.is_nan() || hi < lo {
            return Err(Error::structural(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(MetricSpace {
            domain: Domain::Interval { lo, hi },
            complete: true,
            compact: hi.is_finite(),
        })
    }

    /// Finite space from a square distance matrix and optional labels.
    ///
    /// Construction only enforces shape; metric axioms are checked separately
    /// so that invalid matrices can still be loaded and diagnosed.
    pub fn finite(dist: Vec<Vec<f64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::structural("finite space needs at least one point"));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::structural(format!(
                    "distance matrix is not square: row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::structural(format!("non-finite distance {bad} in row {i}")));
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(Error::structural(format!(
                        "{} labels for {n} points",
                        l.len()
                    )));
                }
                l
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(MetricSpace {
            domain: Domain::Finite { dist, labels },
            complete: true,
            compact: true,
        })
    }

    /// Finite space over labeled points on the real line with `d(x,y) = |x-y|`.
    pub fn finite_from_reals(values: &[f64]) -> Result<Self> {
        let dist = values
            .iter()
            .map(|a| values.iter().map(|b| (a - b).abs()).collect())
            .collect();
        let labels = values.iter().map(|v| v.to_string()).collect();
        MetricSpace::finite(dist, Some(labels))
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn is_interval(&self) -> bool {
        matches!(self.domain, Domain::Interval { .. })
    }

    pub fn is_finite_points(&self) -> bool {
        matches!(self.domain, Domain::Finite { .. })
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }

    /// Interval bounds; panics on finite spaces.
    pub fn bounds(&self) -> (f64, f64) {
        match &self.domain {
            Domain::Interval { lo, hi } => (*lo, *hi),
            Domain::Finite { .. } => panic!("bounds() on a finite space"),
        }
    }

    /// Number of points (finite spaces only).
    pub fn len(&self) -> usize {
        match &self.domain {
            Domain::Finite { dist, .. } => dist.len(),
            Domain::Interval { .. } => panic!("len() on an interval space"),
        }
    }

    pub fn labels(&self) -> &[String] {
        match &self.domain {
            Domain::Finite { labels, .. } => labels,
            Domain::Interval { .. } => &[],
        }
    }

    /// Render a point for reports: label for finite spaces, number otherwise.
    pub fn display_point(&self, p: Point) -> String {
        match (&self.domain, p) {
            (Domain::Finite { labels, .. }, Point::Index(i)) => labels[i].clone(),
            (_, p) => p.to_string(),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match (&self.domain, p) {
            (Domain::Interval { lo, hi }, Point::Real(x)) => {
                x.is_finite() && x >= lo - DOMAIN_EPS && x <= hi + DOMAIN_EPS
            }
            (Domain::Finite { dist, .. }, Point::Index(i)) => i < dist.len(),
            _ => false,
        }
    }

    /// Clamp a real point into the interval after a successful containment
    /// check, absorbing sub-`DOMAIN_EPS` rounding spill at the endpoints.
    pub(crate) fn clamp(&self, p: Point) -> Point {
        match (&self.domain, p) {
            (Domain::Interval { lo, hi }, Point::Real(x)) => Point::Real(x.clamp(*lo, *hi)),
            (_, p) => p,
        }
    }

    /// Distance between two points of this space.
    pub fn distance(&self, a: Point, b: Point) -> f64 {
        match (&self.domain, a, b) {
            (Domain::Interval { .. }, Point::Real(x), Point::Real(y)) => (x - y).abs(),
            (Domain::Finite { dist, .. }, Point::Index(i), Point::Index(j)) => dist[i][j],
            _ => panic!("point kind does not match space kind"),
        }
    }

    /// Check the three metric axioms on a finite space's matrix.
    ///
    /// Interval spaces return an empty report: `|x - y|` is a metric. On
    /// finite spaces the check is exhaustive over all index triples, and an
    /// empty report means the matrix genuinely is a metric.
    pub fn check_metric_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let dist = match &self.domain {
            Domain::Interval { .. } => return report,
            Domain::Finite { dist, .. } => dist,
        };
        let n = dist.len();
        for i in 0..n {
            if dist[i][i] != 0.0 {
                report.violations.push(AxiomViolation::NonzeroDiagonal { i, value: dist[i][i] });
            }
            for j in (i + 1)..n {
                if dist[i][j] != dist[j][i] {
                    report.violations.push(AxiomViolation::Asymmetric {
                        i,
                        j,
                        dij: dist[i][j],
                        dji: dist[j][i],
                    });
                }
                if dist[i][j] < 0.0 {
                    report.violations.push(AxiomViolation::Negative { i, j, value: dist[i][j] });
                } else if dist[i][j] == 0.0 {
                    report.violations.push(AxiomViolation::ZeroOffDiagonal { i, j });
                }
            }
        }
        // Triangle inequality, one report per unordered endpoint pair i < k.
        for i in 0..n {
            for k in (i + 1)..n {
                for j in 0..n {
                    if j == i || j == k {
                        continue;
                    }
                    let lhs = dist[i][k];
                    let rhs = dist[i][j] + dist[j][k];
                    if lhs > rhs {
                        report.violations.push(AxiomViolation::Triangle { i, j, k, lhs, rhs });
                    }
                }
            }
        }
        report
    }

    /// Parse the finite-space text format.
    ///
    /// First non-comment line: whitespace-separated point labels. Each
    /// following line: one row of the distance matrix. `#` starts a comment.
    pub fn parse_space_file(text: &str) -> Result<Self> {
        let mut labels: Option<Vec<String>> = None;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if labels.is_none() {
                labels = Some(line.split_whitespace().map(str::to_string).collect());
                continue;
            }
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| Error::Parse {
                        line: lineno + 1,
                        col: raw.find(tok).map_or(1, |c| c + 1),
                        msg: format!("expected a distance, got `{tok}`"),
                    })
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        let labels = labels.ok_or_else(|| Error::structural("empty space file"))?;
        if rows.len() != labels.len() {
            return Err(Error::structural(format!(
                "{} labels but {} matrix rows",
                labels.len(),
                rows.len()
            )));
        }
        MetricSpace::finite(rows, Some(labels))
    }

    pub fn load_space_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_space_file(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn note2_space_is_a_metric() {
        let space = MetricSpace::finite_from_reals(&[0.0, 0.5, 1.0]).unwrap();
        assert!(space.check_metric_axioms().is_metric());
        assert!(space.is_compact() && space.is_complete());
    }

    #[test]
    fn two_point_space_is_a_metric() {
        let space = MetricSpace::finite(vec![vec![0.0, 1.0], vec![1.0, 0.0]], None).unwrap();
        assert!(space.check_metric_axioms().is_metric());
    }

    #[test]
    fn forced_triangle_violation_is_reported_once() {
        // d(0,2) = 5 > 1 + 1 = d(0,1) + d(1,2)
        let m = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        let space = MetricSpace::finite(m, None).unwrap();
        let report = space.check_metric_axioms();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(
            report.violations[0],
            AxiomViolation::Triangle { i: 0, j: 1, k: 2, lhs: 5.0, rhs: 2.0 }
        );
    }

    #[test]
    fn non_square_matrix_is_a_structural_error() {
        let err = MetricSpace::finite(vec![vec![0.0, 1.0], vec![1.0]], None).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn interval_axioms_hold_vacuously() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        assert!(space.check_metric_axioms().is_metric());
        assert!(space.is_compact());
        let unbounded = MetricSpace::interval(1.0, f64::INFINITY).unwrap();
        assert!(!unbounded.is_compact());
        assert!(unbounded.is_complete());
    }

    #[test]
    fn space_file_round_trip() {
        let text = "# three points\n0 1/2 1\n0 0.5 1\n0.5 0 0.5\n1 0.5 0\n";
        let space = MetricSpace::parse_space_file(text).unwrap();
        assert_eq!(space.len(), 3);
        assert_eq!(space.labels(), &["0", "1/2", "1"]);
        assert_eq!(space.distance(Point::Index(0), Point::Index(2)), 1.0);
        assert!(space.check_metric_axioms().is_metric());
    }

    #[test]
    fn compact_implies_complete() {
        let spaces = [
            MetricSpace::interval(0.0, 1.0).unwrap(),
            MetricSpace::interval(0.0, f64::INFINITY).unwrap(),
            MetricSpace::finite_from_reals(&[0.0, 1.0]).unwrap(),
        ];
        for s in &spaces {
            assert!(!s.is_compact() || s.is_complete());
        }
    }
}
