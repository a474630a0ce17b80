//! Contraction-modulus estimation and hypothesis probes.
//!
//! The central quantity is the transformed distance ratio
//! `d(TSx, TSy) / d(Tx, Ty)` over sampled pairs with `Tx != Ty`. Its maximum
//! estimates the contraction modulus `k`; the verdict then separates three
//! regimes: a uniform modulus below 1 (contraction through `T`), strict
//! ratios below 1 with supremum at 1 (contractive through `T`, no uniform
//! modulus), and a witnessed ratio at or above 1 (neither).
//!
//! Ratios are doubles computed from user maps, so each carries rounding
//! noise proportional to `eps * magnitude / d(Tx, Ty)`. Pairs whose noise
//! estimate exceeds [`AnalysisOptions::max_ratio_noise`] are excluded from
//! the report rather than pollute it with digits that mean nothing; the
//! report counts them separately. Finite spaces use exact table lookups and
//! skip the filter.

use crate::error::{Error, Result};
use crate::mapping::{Mapping, MappingPair};
use crate::point::{pair_less, Point};
use crate::sampler::PairSampler;
use crate::space::MetricSpace;
use crate::{CMP_SLACK, DISTINCT_EPS};

/// Safety factor on the per-pair rounding-noise estimate. Covers the few
/// floating-point operations a vocabulary expression performs per value.
const NOISE_SAFETY: f64 = 8.0;

/// Near-diagonal refinement ladder: anchors split the interval in this many
/// segments, offsets run from `span / 2^LADDER_MIN_EXP` down by halving.
const LADDER_ANCHORS: usize = 8;
const LADDER_MIN_EXP: u32 = 3;
const LADDER_MAX_EXP: u32 = 30;

/// Classification of `(T, S)` from sampled evidence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContractionVerdict {
    /// Every usable ratio, and their maximum `k`, stayed at least the margin
    /// below 1: evidence of a uniform modulus.
    TContraction(f64),
    /// Every usable ratio was strictly below 1, but the maximum came within
    /// the margin of 1: consistent with a contractive map whose supremum
    /// ratio is 1, unattained.
    TContractive,
    /// Some pair's ratio reached 1 or above.
    NotTContractive,
    /// No usable pair (for example, `T` collapsed every sampled pair).
    Inconclusive,
}

impl ContractionVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ContractionVerdict::TContraction(_) => "t-contraction",
            ContractionVerdict::TContractive => "t-contractive",
            ContractionVerdict::NotTContractive => "not-t-contractive",
            ContractionVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Estimation knobs shared by the analysis operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    /// Verdict boundary: `k` up to `1 - margin` is a contraction; anything
    /// between that and 1 is classified contractive (supremum at 1).
    pub margin: f64,
    /// Maximum tolerated rounding-noise estimate for a pair's ratio to be
    /// used. Smaller values report fewer, more trustworthy digits.
    pub max_ratio_noise: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { margin: 1e-6, max_ratio_noise: 1e-8 }
    }
}

impl AnalysisOptions {
    /// Certificate-grade ratios: every reported ratio is trustworthy to
    /// about 1e-12, at the cost of excluding more near-diagonal pairs.
    pub fn certificate_grade() -> Self {
        AnalysisOptions { max_ratio_noise: 1e-12, ..Default::default() }
    }
}

/// Sampler configuration echoed into reports.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    pub strategy: &'static str,
    pub sample_count: usize,
    pub rng_seed: u64,
    pub tail_cap: f64,
    pub max_ratio_noise: f64,
    /// Pairs from the sampler proper.
    pub base_pairs: usize,
    /// Near-diagonal pairs added by the modulus estimator on intervals.
    pub refinement_pairs: usize,
}

/// Outcome of a modulus estimation run.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    /// Maximum usable ratio `d(TSx,TSy) / d(Tx,Ty)`; 0 when nothing was usable.
    pub k_estimate: f64,
    pub verdict: ContractionVerdict,
    /// Pair attaining `k_estimate` (ties broken lexicographically).
    pub witness_max: Option<(Point, Point)>,
    /// A pair whose ratio reached 1, when one exists.
    pub violation_witness: Option<(Point, Point)>,
    /// Pairs with `Tx = Ty` (within the distinct-point tolerance).
    pub skipped_pairs: usize,
    /// Pairs excluded because their ratio noise estimate was too large.
    pub noisy_pairs: usize,
    /// Pairs that entered the estimate.
    pub usable_pairs: usize,
    pub sample_meta: SampleMeta,
}

/// Estimate the contraction modulus of `S` through `T` over sampled pairs.
///
/// On interval spaces the sampler's pairs are augmented with a deterministic
/// near-diagonal ladder (pairs `(a, a + h)` with geometrically shrinking
/// `h`), which is what lets the estimator see supremum ratios that are only
/// approached along the diagonal.
pub fn estimate_modulus(
    space: &MetricSpace,
    pair: &MappingPair,
    sampler: &PairSampler,
    opts: &AnalysisOptions,
) -> Result<ContractionReport> {
    pair.validate_for(space)?;
    let base = sampler.sample_pairs(space)?;
    let base_count = base.len();
    let refinement = if space.is_interval() {
        diagonal_ladder(space, sampler)
    } else {
        Vec::new()
    };
    let refinement_count = refinement.len();

    let mut k_estimate = 0.0f64;
    let mut witness_max: Option<(Point, Point)> = None;
    let mut violation: Option<(Point, Point)> = None;
    let mut skipped = 0usize;
    let mut noisy = 0usize;
    let mut usable = 0usize;
    let exact_distances = space.is_finite_points();

    for (x, y) in base.into_iter().chain(refinement) {
        let tx = pair.t_apply(space, x)?;
        let ty = pair.t_apply(space, y)?;
        let d_t = space.distance(tx, ty);
        if d_t < DISTINCT_EPS {
            skipped += 1;
            continue;
        }
        let tsx = pair.ts_apply(space, x)?;
        let tsy = pair.ts_apply(space, y)?;
        let d_ts = space.distance(tsx, tsy);
        let ratio = d_ts / d_t;
        if !exact_distances {
            let noise = ratio_noise(tx, ty, tsx, tsy, ratio, d_t);
            if noise > opts.max_ratio_noise {
                noisy += 1;
                continue;
            }
        }
        usable += 1;
        let candidate = (x, y);
        if ratio > k_estimate
            || (ratio == k_estimate
                && witness_max.map_or(true, |best| pair_less(candidate, best)))
        {
            k_estimate = ratio;
            witness_max = Some(candidate);
        }
        if ratio >= 1.0 && violation.is_none() {
            violation = Some(candidate);
        }
    }

    let verdict = if usable == 0 {
        ContractionVerdict::Inconclusive
    } else if violation.is_some() {
        ContractionVerdict::NotTContractive
    } else if k_estimate <= 1.0 - opts.margin {
        ContractionVerdict::TContraction(k_estimate)
    } else {
        ContractionVerdict::TContractive
    };

    Ok(ContractionReport {
        k_estimate,
        verdict,
        witness_max,
        violation_witness: violation,
        skipped_pairs: skipped,
        noisy_pairs: noisy,
        usable_pairs: usable,
        sample_meta: SampleMeta {
            strategy: sampler.strategy.name(),
            sample_count: sampler.sample_count,
            rng_seed: sampler.rng_seed,
            tail_cap: sampler.tail_cap,
            max_ratio_noise: opts.max_ratio_noise,
            base_pairs: base_count,
            refinement_pairs: refinement_count,
        },
    })
}

/// Classical contraction check: modulus estimation with `T` the identity.
pub fn check_classical_contraction(
    space: &MetricSpace,
    s: &Mapping,
    sampler: &PairSampler,
    opts: &AnalysisOptions,
) -> Result<ContractionReport> {
    estimate_modulus(space, &MappingPair::classical(s.clone()), sampler, opts)
}

/// Rounding-noise estimate for one ratio: absolute error of
/// `d(TSx,TSy)/d(Tx,Ty)` under `eps`-level perturbations of the four values.
fn ratio_noise(tx: Point, ty: Point, tsx: Point, tsy: Point, ratio: f64, d_t: f64) -> f64 {
    let m_t = 1.0f64.max(tx.as_real().abs()).max(ty.as_real().abs());
    let m_ts = 1.0f64.max(tsx.as_real().abs()).max(tsy.as_real().abs());
    NOISE_SAFETY * f64::EPSILON * (m_ts + ratio * m_t) / d_t
}

/// Deterministic near-diagonal pairs `(a, a+h)` for interval spaces.
fn diagonal_ladder(space: &MetricSpace, sampler: &PairSampler) -> Vec<(Point, Point)> {
    let (lo, _) = space.bounds();
    let hi = sampler.effective_hi(space);
    let span = hi - lo;
    if !(span > 0.0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..=LADDER_ANCHORS {
        let a = lo + span * (i as f64) / (LADDER_ANCHORS as f64);
        for j in LADDER_MIN_EXP..=LADDER_MAX_EXP {
            let h = span * (2.0f64).powi(-(j as i32));
            if h < DISTINCT_EPS {
                break;
            }
            let (x, y) = if a + h <= hi { (a, a + h) } else { (a - h, a) };
            if x >= lo && y <= hi && (y - x) >= DISTINCT_EPS {
                out.push((Point::Real(x), Point::Real(y)));
            }
        }
    }
    out
}

/// Injectivity scan outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InjectivityVerdict {
    /// No sampled collision. Exact on finite spaces, evidence on intervals.
    NoCollisionFound,
    /// Two distinct points with `d(Tx, Ty) < 1e-12`.
    CollisionWitness(Point, Point),
}

/// Look for collisions of `T`.
///
/// Finite spaces are checked exhaustively, so the verdict is exact there.
/// Interval spaces are checked on the sampler's pairs only; absence of a
/// collision is evidence, not proof.
pub fn check_injectivity(
    space: &MetricSpace,
    t: &Mapping,
    sampler: &PairSampler,
) -> Result<InjectivityVerdict> {
    t.validate_for(space)?;
    if space.is_finite_points() {
        let n = space.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let ti = t.apply(space, Point::Index(i))?;
                let tj = t.apply(space, Point::Index(j))?;
                if ti == tj {
                    return Ok(InjectivityVerdict::CollisionWitness(
                        Point::Index(i),
                        Point::Index(j),
                    ));
                }
            }
        }
        return Ok(InjectivityVerdict::NoCollisionFound);
    }
    for (x, y) in sampler.sample_pairs(space)? {
        let tx = t.apply(space, x)?;
        let ty = t.apply(space, y)?;
        if space.distance(tx, ty) < DISTINCT_EPS {
            return Ok(InjectivityVerdict::CollisionWitness(x, y));
        }
    }
    Ok(InjectivityVerdict::NoCollisionFound)
}

/// Verdict of a subsequential-convergence probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbeVerdict {
    ConsistentWithSubsequential,
    /// `{Ty_n}` converged while `{y_n}` escaped every bounded window: this
    /// probe sequence witnesses failure of subsequential convergence.
    EvidenceAgainstSubsequential,
    Inconclusive,
}

impl ProbeVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ProbeVerdict::ConsistentWithSubsequential => "consistent-with-subsequential",
            ProbeVerdict::EvidenceAgainstSubsequential => "evidence-against-subsequential",
            ProbeVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Result of probing one sequence against `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceProbeReport {
    /// The tail of `{Ty_n}` collapsed below the convergence tolerance.
    pub t_image_converged: bool,
    /// `{y_n}` stayed within a window of width 1e6.
    pub preimage_bounded: bool,
    pub verdict: ProbeVerdict,
    /// Subsampled prefix of an escaping `{y_n}` with convergent T-images.
    pub escape_witness: Option<Vec<Point>>,
}

const TAIL_DIAMETER_TOL: f64 = 1e-8;
const BOUNDED_WINDOW: f64 = 1e6;

/// Probe whether convergence of `{Ty_n}` forces `{y_n}` to cluster.
///
/// On compact spaces every sequence has a convergent subsequence, so the
/// verdict is immediately consistent. Elsewhere the probe tests only the
/// supplied sequence and labels the outcome as evidence.
pub fn probe_subsequential_convergence(
    space: &MetricSpace,
    t: &Mapping,
    sequence: &[Point],
) -> Result<ConvergenceProbeReport> {
    if sequence.len() < 10 {
        return Err(Error::param(format!(
            "probe sequence needs at least 10 terms, got {}",
            sequence.len()
        )));
    }
    let t_images: Vec<Point> = sequence
        .iter()
        .map(|&y| t.apply(space, y))
        .collect::<Result<_>>()?;

    if space.is_compact() {
        return Ok(ConvergenceProbeReport {
            t_image_converged: tail_converged(space, &t_images),
            preimage_bounded: true,
            verdict: ProbeVerdict::ConsistentWithSubsequential,
            escape_witness: None,
        });
    }

    let t_image_converged = tail_converged(space, &t_images);
    let preimage_bounded = diameter(space, sequence) <= BOUNDED_WINDOW;
    let (verdict, escape_witness) = match (t_image_converged, preimage_bounded) {
        (true, false) => (
            ProbeVerdict::EvidenceAgainstSubsequential,
            Some(subsample_prefix(sequence)),
        ),
        (true, true) => (ProbeVerdict::ConsistentWithSubsequential, None),
        (false, _) => (ProbeVerdict::Inconclusive, None),
    };
    Ok(ConvergenceProbeReport { t_image_converged, preimage_bounded, verdict, escape_witness })
}

/// The default escape probe: geometrically growing points for unbounded
/// intervals, a short convergent sequence otherwise.
pub fn geometric_escape_probe(space: &MetricSpace) -> Vec<Point> {
    if !space.is_interval() {
        return (0..space.len()).cycle().take(12).map(Point::Index).collect();
    }
    let (lo, hi) = space.bounds();
    if hi.is_finite() {
        (1..=12).map(|n| Point::Real(lo + (hi - lo) / n as f64)).collect()
    } else {
        std::iter::once(Point::Real(lo))
            .chain((0..=50).map(|j| Point::Real(lo + (2.0f64).powi(j))))
            .collect()
    }
}

fn tail_converged(space: &MetricSpace, images: &[Point]) -> bool {
    let tail_len = (images.len() / 4).max(5).min(images.len());
    let tail = &images[images.len() - tail_len..];
    diameter(space, tail) < TAIL_DIAMETER_TOL
}

fn diameter(space: &MetricSpace, points: &[Point]) -> f64 {
    if space.is_interval() {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in points {
            let v = p.as_real();
            lo = lo.min(v);
            hi = hi.max(v);
        }
        hi - lo
    } else {
        let mut best = 0.0f64;
        for (i, &a) in points.iter().enumerate() {
            for &b in &points[i + 1..] {
                best = best.max(space.distance(a, b));
            }
        }
        best
    }
}

fn subsample_prefix(seq: &[Point]) -> Vec<Point> {
    let mut idx = vec![0usize];
    let mut step = 1usize;
    while *idx.last().unwrap() + step < seq.len() - 1 {
        idx.push(idx.last().unwrap() + step);
        step *= 2;
    }
    idx.push(seq.len() - 1);
    idx.dedup();
    idx.into_iter().map(|i| seq[i]).collect()
}

/// Continuity evidence from finite-difference oscillation on refining grids.
#[derive(Debug, Clone, PartialEq)]
pub enum ContinuityVerdict {
    ConsistentWithContinuous,
    /// Largest adjacent-point jump failed to shrink under refinement.
    JumpSuspected(Point),
    Inconclusive,
}

impl ContinuityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ContinuityVerdict::ConsistentWithContinuous => "consistent-with-continuous",
            ContinuityVerdict::JumpSuspected(_) => "jump-suspected",
            ContinuityVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityEvidence {
    pub verdict: ContinuityVerdict,
    /// Largest adjacent jump on the finest grid.
    pub max_jump: f64,
}

/// Probe continuity of a map by comparing the largest adjacent-value jump
/// across three grid refinements. Evidence only: a function can hide a jump
/// between any two grid points.
pub fn probe_continuity(space: &MetricSpace, map: &Mapping, tail_cap: f64) -> Result<ContinuityEvidence> {
    map.validate_for(space)?;
    if space.is_finite_points() {
        // isolated points: every map is continuous
        return Ok(ContinuityEvidence {
            verdict: ContinuityVerdict::ConsistentWithContinuous,
            max_jump: 0.0,
        });
    }
    let (lo, hi) = space.bounds();
    let hi_eff = if hi.is_finite() { hi } else { tail_cap.max(lo) };
    if hi_eff <= lo {
        return Ok(ContinuityEvidence {
            verdict: ContinuityVerdict::ConsistentWithContinuous,
            max_jump: 0.0,
        });
    }
    let mut jumps = Vec::new();
    let mut worst_at = Point::Real(lo);
    for level in 0..3u32 {
        let m = 129 * 4usize.pow(level);
        let mut max_jump = 0.0f64;
        let mut prev = map.apply(space, Point::Real(lo))?;
        for i in 1..=m {
            let x = lo + (hi_eff - lo) * (i as f64) / (m as f64);
            let fx = map.apply(space, Point::Real(x))?;
            let jump = space.distance(prev, fx);
            if jump > max_jump {
                max_jump = jump;
                if level == 2 {
                    worst_at = Point::Real(x);
                }
            }
            prev = fx;
        }
        jumps.push(max_jump);
    }
    let (coarse, fine) = (jumps[0], jumps[2]);
    let verdict = if fine <= 1e-9 {
        ContinuityVerdict::ConsistentWithContinuous
    } else if fine <= 0.5 * coarse {
        ContinuityVerdict::ConsistentWithContinuous
    } else {
        ContinuityVerdict::JumpSuspected(worst_at)
    };
    Ok(ContinuityEvidence { verdict, max_jump: fine })
}

/// Re-check a claimed modulus: every usable sampled pair must satisfy
/// `d(TSx,TSy) <= k * d(Tx,Ty) + slack`. Used by tests and diagnostics as an
/// independent second pass over the same pair set.
pub fn verify_modulus(
    space: &MetricSpace,
    pair: &MappingPair,
    sampler: &PairSampler,
    k: f64,
) -> Result<bool> {
    for (x, y) in sampler.sample_pairs(space)? {
        let tx = pair.t_apply(space, x)?;
        let ty = pair.t_apply(space, y)?;
        let d_t = space.distance(tx, ty);
        if d_t < DISTINCT_EPS {
            continue;
        }
        let tsx = pair.ts_apply(space, x)?;
        let tsy = pair.ts_apply(space, y)?;
        if space.distance(tsx, tsy) > k * d_t + CMP_SLACK {
            return Ok(false);
        }
    }
    Ok(true)
}
