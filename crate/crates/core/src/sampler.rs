//! Deterministic samplers producing distinct point pairs.
//!
//! Everything downstream (modulus estimation, injectivity scans) consumes
//! pairs from here. Sampling is a pure function of the sampler fields: same
//! strategy, count, seed, and tail cap give the same pairs, bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::space::{Domain, MetricSpace};
use crate::DISTINCT_EPS;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleStrategy {
    /// Uniform lattice; pairs enumerated lexicographically.
    Grid,
    /// Independent uniform draws, rejecting near-coincident pairs.
    UniformRandom,
    /// Half grid, half random.
    Hybrid,
}

impl SampleStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SampleStrategy::Grid => "grid",
            SampleStrategy::UniformRandom => "random",
            SampleStrategy::Hybrid => "hybrid",
        }
    }
}

/// Pair sampler configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSampler {
    pub strategy: SampleStrategy,
    pub sample_count: usize,
    pub rng_seed: u64,
    /// Unbounded intervals are sampled from `[lo, tail_cap]`; supremum
    /// estimates over such samples are lower bounds for the full domain.
    pub tail_cap: f64,
}

impl Default for PairSampler {
    fn default() -> Self {
        PairSampler {
            strategy: SampleStrategy::Hybrid,
            sample_count: 10_000,
            rng_seed: 0,
            tail_cap: 1e6,
        }
    }
}

impl PairSampler {
    pub fn grid(sample_count: usize) -> Self {
        PairSampler { strategy: SampleStrategy::Grid, sample_count, ..Default::default() }
    }

    pub fn random(sample_count: usize, seed: u64) -> Self {
        PairSampler {
            strategy: SampleStrategy::UniformRandom,
            sample_count,
            rng_seed: seed,
            ..Default::default()
        }
    }

    /// Effective upper sampling bound for an interval space.
    pub fn effective_hi(&self, space: &MetricSpace) -> f64 {
        let (lo, hi) = space.bounds();
        if hi.is_finite() {
            hi
        } else {
            self.tail_cap.max(lo)
        }
    }

    /// Produce distinct point pairs.
    ///
    /// Grid on a finite space enumerates all unordered pairs (capped at
    /// `sample_count`); on an interval it lays a lattice just large enough
    /// that the lexicographic pair enumeration covers `sample_count` pairs.
    pub fn sample_pairs(&self, space: &MetricSpace) -> Result<Vec<(Point, Point)>> {
        if self.sample_count == 0 {
            return Err(Error::param("sample_count must be at least 1"));
        }
        match space.domain() {
            Domain::Finite { dist, .. } => self.finite_pairs(dist.len()),
            Domain::Interval { lo, hi } => self.interval_pairs(*lo, *hi),
        }
    }

    fn finite_pairs(&self, n: usize) -> Result<Vec<(Point, Point)>> {
        if n < 2 {
            return Err(Error::DegenerateDomain(
                "a 1-point space has no distinct pairs".to_string(),
            ));
        }
        let all: Vec<(Point, Point)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (Point::Index(i), Point::Index(j))))
            .collect();
        match self.strategy {
            SampleStrategy::Grid | SampleStrategy::Hybrid => {
                Ok(all.into_iter().take(self.sample_count).collect())
            }
            SampleStrategy::UniformRandom => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
                let mut out = Vec::with_capacity(self.sample_count);
                while out.len() < self.sample_count {
                    let i = rng.gen_range(0..n);
                    let j = rng.gen_range(0..n);
                    if i != j {
                        out.push((Point::Index(i.min(j)), Point::Index(i.max(j))));
                    }
                }
                Ok(out)
            }
        }
    }

    fn interval_pairs(&self, lo: f64, hi: f64) -> Result<Vec<(Point, Point)>> {
        let hi_eff = if hi.is_finite() { hi } else { self.tail_cap };
        if hi_eff <= lo {
            return Err(Error::DegenerateDomain(format!(
                "interval [{lo}, {}] cannot produce distinct pairs",
                if hi.is_finite() { hi } else { hi_eff }
            )));
        }
        match self.strategy {
            SampleStrategy::Grid => Ok(grid_pairs(lo, hi_eff, self.sample_count)),
            SampleStrategy::UniformRandom => {
                Ok(random_pairs(lo, hi_eff, self.sample_count, self.rng_seed))
            }
            SampleStrategy::Hybrid => {
                let n_grid = self.sample_count / 2;
                let n_rand = self.sample_count - n_grid;
                let mut out = grid_pairs(lo, hi_eff, n_grid);
                out.extend(random_pairs(lo, hi_eff, n_rand, self.rng_seed));
                Ok(out)
            }
        }
    }
}

fn grid_pairs(lo: f64, hi: f64, count: usize) -> Vec<(Point, Point)> {
    if count == 0 {
        return Vec::new();
    }
    // smallest lattice with C(m, 2) >= count
    let mut m = 2usize;
    while m * (m - 1) / 2 < count {
        m += 1;
    }
    let span = hi - lo;
    let lattice: Vec<f64> = (0..m)
        .map(|i| lo + span * (i as f64) / ((m - 1) as f64))
        .collect();
    let mut out = Vec::with_capacity(count);
    'outer: for i in 0..m {
        for j in (i + 1)..m {
            out.push((Point::Real(lattice[i]), Point::Real(lattice[j])));
            if out.len() == count {
                break 'outer;
            }
        }
    }
    out
}

fn random_pairs(lo: f64, hi: f64, count: usize, seed: u64) -> Vec<(Point, Point)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = hi - lo;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = lo + span * rng.gen::<f64>();
        let y = lo + span * rng.gen::<f64>();
        // pairs this close are useless for ratio estimates; redraw
        if (x - y).abs() < DISTINCT_EPS {
            continue;
        }
        out.push((Point::Real(x.min(y)), Point::Real(x.max(y))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_grid_yields_all_unordered_pairs() {
        let space = MetricSpace::finite_from_reals(&[0.0, 0.5, 1.0]).unwrap();
        let sampler = PairSampler::grid(100);
        let pairs = sampler.sample_pairs(&space).unwrap();
        assert_eq!(pairs.len(), 3); // C(3,2)
        assert_eq!(pairs[0], (Point::Index(0), Point::Index(1)));
        assert_eq!(pairs[2], (Point::Index(1), Point::Index(2)));
    }

    #[test]
    fn unit_interval_grid_of_ten_pairs_uses_a_five_point_lattice() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        let pairs = PairSampler::grid(10).sample_pairs(&space).unwrap();
        assert_eq!(pairs.len(), 10);
        // C(5,2) = 10: lattice {0, 1/4, 1/2, 3/4, 1}
        assert_eq!(pairs[0], (Point::Real(0.0), Point::Real(0.25)));
        assert_eq!(pairs[9], (Point::Real(0.75), Point::Real(1.0)));
        for (a, b) in pairs {
            assert!(space.distance(a, b) > 0.0);
        }
    }

    #[test]
    fn random_sampling_is_reproducible_and_truncates_unbounded_domains() {
        let space = MetricSpace::interval(1.0, f64::INFINITY).unwrap();
        let sampler = PairSampler {
            strategy: SampleStrategy::UniformRandom,
            sample_count: 64,
            rng_seed: 7,
            tail_cap: 100.0,
        };
        let a = sampler.sample_pairs(&space).unwrap();
        let b = sampler.sample_pairs(&space).unwrap();
        assert_eq!(a, b);
        for (x, y) in a {
            let (x, y) = (x.as_real(), y.as_real());
            assert!(x >= 1.0 && x <= 100.0 && y >= 1.0 && y <= 100.0);
            assert!((x - y).abs() >= DISTINCT_EPS);
        }
    }

    #[test]
    fn degenerate_interval_is_rejected() {
        let space = MetricSpace::interval(2.0, 2.0).unwrap();
        assert!(PairSampler::grid(5).sample_pairs(&space).is_err());
    }

    #[test]
    fn hybrid_mixes_grid_and_random() {
        let space = MetricSpace::interval(0.0, 1.0).unwrap();
        let sampler = PairSampler { sample_count: 11, ..Default::default() };
        let pairs = sampler.sample_pairs(&space).unwrap();
        assert_eq!(pairs.len(), 11);
        let again = sampler.sample_pairs(&space).unwrap();
        assert_eq!(pairs, again);
    }
}
