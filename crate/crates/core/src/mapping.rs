//! Self-maps on a metric space and the `(T, S)` pair under study.
//!
//! A [`Mapping`] is a pure function from points to points: an expression or
//! closure on interval spaces, a lookup table on finite spaces, or the
//! identity. Every evaluation checks that the image stays inside the domain;
//! a map that leaves the space is a hard error, not a silent extrapolation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::point::Point;
use crate::space::MetricSpace;

#[derive(Clone)]
enum MapKind {
    Identity,
    Real(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    Table(Vec<usize>),
}

/// A self-map of a metric space.
#[derive(Clone)]
pub struct Mapping {
    kind: MapKind,
    name: String,
}

impl fmt::Debug for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mapping({})", self.name)
    }
}

impl Mapping {
    pub fn identity() -> Self {
        Mapping { kind: MapKind::Identity, name: "x".to_string() }
    }

    /// Wrap a pure closure on the reals. The name is used in reports and
    /// error messages.
    pub fn from_fn(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Mapping { kind: MapKind::Real(Arc::new(f)), name: name.into() }
    }

    /// Compile a parsed expression into a real map.
    pub fn from_expr(source: impl Into<String>, expr: Expr) -> Self {
        let source = source.into();
        if expr == Expr::Var {
            return Mapping { kind: MapKind::Identity, name: source };
        }
        Mapping {
            kind: MapKind::Real(Arc::new(move |x| expr.eval(x))),
            name: source,
        }
    }

    /// Parse `source` with the expression grammar and compile it.
    pub fn parse(source: &str, line: usize) -> Result<Self> {
        let expr = Expr::parse(source, line)?;
        Ok(Mapping::from_expr(source.trim().to_string(), expr))
    }

    /// Finite-space map given point-by-point as indices.
    pub fn table(name: impl Into<String>, entries: Vec<usize>) -> Self {
        Mapping { kind: MapKind::Table(entries), name: name.into() }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, MapKind::Identity)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table_entries(&self) -> Option<&[usize]> {
        match &self.kind {
            MapKind::Table(t) => Some(t),
            _ => None,
        }
    }

    /// Check that this map can act on `space` at all (table sizes etc.).
    pub fn validate_for(&self, space: &MetricSpace) -> Result<()> {
        match (&self.kind, space.is_finite_points()) {
            (MapKind::Table(t), true) => {
                let n = space.len();
                if t.len() != n {
                    return Err(Error::structural(format!(
                        "map {} has {} entries for a {n}-point space",
                        self.name,
                        t.len()
                    )));
                }
                if let Some(bad) = t.iter().find(|&&i| i >= n) {
                    return Err(Error::structural(format!(
                        "map {} sends a point to index {bad}, outside the {n}-point space",
                        self.name
                    )));
                }
                Ok(())
            }
            (MapKind::Table(_), false) => {
                Err(Error::structural(format!("table map {} on an interval space", self.name)))
            }
            (MapKind::Real(_), true) => {
                Err(Error::structural(format!("real map {} on a finite space", self.name)))
            }
            _ => Ok(()),
        }
    }

    /// Evaluate at a point, enforcing that the image lies in the domain.
    pub fn apply(&self, space: &MetricSpace, p: Point) -> Result<Point> {
        if !space.contains(p) {
            return Err(Error::DomainViolation {
                map: self.name.clone(),
                point: space.display_point(p),
                image: "(input outside domain)".to_string(),
            });
        }
        let image = match (&self.kind, p) {
            (MapKind::Identity, p) => p,
            (MapKind::Real(f), Point::Real(x)) => Point::Real(f(x)),
            (MapKind::Table(t), Point::Index(i)) => Point::Index(t[i]),
            _ => {
                return Err(Error::structural(format!(
                    "map {} applied to a point of the wrong kind",
                    self.name
                )))
            }
        };
        // contains() rejects NaN and infinite images as well.
        if !space.contains(image) {
            return Err(Error::DomainViolation {
                map: self.name.clone(),
                point: space.display_point(p),
                image: match image {
                    Point::Real(v) => v.to_string(),
                    Point::Index(i) => format!("#{i}"),
                },
            });
        }
        Ok(space.clamp(image))
    }
}

/// The pair `(T, S)` of self-maps under study.
///
/// `t_is_identity` marks the classical reduction: with `T = x`, contraction
/// through `T` and plain contraction coincide.
#[derive(Debug, Clone)]
pub struct MappingPair {
    pub t: Mapping,
    pub s: Mapping,
    pub t_is_identity: bool,
}

impl MappingPair {
    pub fn new(t: Mapping, s: Mapping) -> Self {
        let t_is_identity = t.is_identity();
        MappingPair { t, s, t_is_identity }
    }

    /// Classical pair: `T` is the identity.
    pub fn classical(s: Mapping) -> Self {
        MappingPair::new(Mapping::identity(), s)
    }

    pub fn validate_for(&self, space: &MetricSpace) -> Result<()> {
        self.t.validate_for(space)?;
        self.s.validate_for(space)
    }

    pub fn t_apply(&self, space: &MetricSpace, p: Point) -> Result<Point> {
        self.t.apply(space, p)
    }

    pub fn s_apply(&self, space: &MetricSpace, p: Point) -> Result<Point> {
        self.s.apply(space, p)
    }

    /// `T(S(p))`.
    pub fn ts_apply(&self, space: &MetricSpace, p: Point) -> Result<Point> {
        let sp = self.s.apply(space, p)?;
        self.t.apply(space, sp)
    }
}
