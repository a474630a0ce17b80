//! Points of a metric space: reals on an interval, indices on a finite set.

use std::fmt;

/// A point of a [`crate::space::MetricSpace`].
///
/// Interval spaces carry `Real` points; finite spaces carry `Index` points
/// into their label/matrix order. Mixing kinds is a caller bug and panics in
/// distance computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Real(f64),
    Index(usize),
}

impl Point {
    pub fn as_real(self) -> f64 {
        match self {
            Point::Real(x) => x,
            Point::Index(i) => panic!("expected a real point, got index {i}"),
        }
    }

    pub fn as_index(self) -> usize {
        match self {
            Point::Index(i) => i,
            Point::Real(x) => panic!("expected a finite-space point, got real {x}"),
        }
    }

    /// Total order used for deterministic tie-breaking of witness pairs.
    pub fn order_key(self) -> (u8, f64) {
        match self {
            Point::Real(x) => (0, x),
            Point::Index(i) => (1, i as f64),
        }
    }
}

pub(crate) fn pair_key(a: Point, b: Point) -> (u8, f64, u8, f64) {
    let (ka, va) = a.order_key();
    let (kb, vb) = b.order_key();
    (ka, va, kb, vb)
}

pub(crate) fn pair_less(lhs: (Point, Point), rhs: (Point, Point)) -> bool {
    let l = pair_key(lhs.0, lhs.1);
    let r = pair_key(rhs.0, rhs.1);
    l.partial_cmp(&r) == Some(std::cmp::Ordering::Less)
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Real(x) => write!(f, "{x}"),
            Point::Index(i) => write!(f, "#{i}"),
        }
    }
}
