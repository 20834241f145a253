//! End-to-end studies: random bijections, adversarial embeddings, estimates
//! of the overlap number of complete triple systems, and the expander
//! pipeline.
//!
//! Every trial draws from its own ChaCha stream derived from the master
//! seed, so results do not depend on the order in which trials run.

mod expander;

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use expander::{expander_overlap_pipeline, DeficitTerms, ExpanderEmbedding, ExpanderReport};

use crate::error::{Error, Result};
use crate::geom::{
    binomial, deep_point_complete, overlap_value, rat, Embedding, OverlapReport, Point, PointSet, Rational,
};
use crate::hypergraph::Hypergraph;

/// Coordinates of generated points are multiples of `2^-GRID_BITS`.
pub const GRID_BITS: u32 = 20;
const GRID: i64 = 1 << GRID_BITS;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: usize,
    pub initial_temperature: f64,
    /// Per-step temperature factor, in `(0, 1)`.
    pub cooling: f64,
    /// Annealing steps per chain.
    pub steps: usize,
    /// Sample budget for approximate overlap evaluation.
    pub samples: usize,
    /// Largest hyperedge count evaluated exactly inside loops.
    pub exact_edge_budget: usize,
    pub epsilon: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            trials: 20,
            initial_temperature: 0.05,
            cooling: 0.98,
            steps: 200,
            samples: 2000,
            exact_edge_budget: 2000,
            epsilon: 0.1,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!("cooling factor {} not in (0, 1)", self.cooling)));
        }
        if !(self.initial_temperature > 0.0) {
            return Err(Error::InvalidParameter("initial temperature must be positive".into()));
        }
        Ok(())
    }

    /// Independent generator for trial `stream`.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }
}

/// Bounds on an overlap number. `upper` is the exact overlap of a concrete
/// witness embedding (every embedding bounds `c(H)` from above); `lower` is
/// only set when a structural certificate exists.
#[derive(Clone, Debug)]
pub struct OverlapEstimate {
    pub n: usize,
    pub upper: Rational,
    pub upper_method: &'static str,
    pub witness: PointSet,
    pub witness_point: Point,
    pub lower: Option<Rational>,
    pub lower_method: Option<&'static str>,
}

fn grid_point(x: i64, y: i64) -> Point {
    Point::xy(rat(x, GRID), rat(y, GRID))
}

fn collinear(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    (b.0 as i128 - ax) * (c.1 as i128 - ay) == (b.1 as i128 - ay) * (c.0 as i128 - ax)
}

/// Whether `p` can join `pts` (skipping index `skip`) keeping general position.
fn fits(pts: &[(i64, i64)], p: (i64, i64), skip: usize) -> bool {
    for i in 0..pts.len() {
        if i == skip {
            continue;
        }
        if pts[i] == p {
            return false;
        }
        for j in i + 1..pts.len() {
            if j != skip && collinear(pts[i], pts[j], p) {
                return false;
            }
        }
    }
    true
}

fn to_set(pts: &[(i64, i64)]) -> PointSet {
    PointSet::planar(pts.iter().map(|&(x, y)| grid_point(x, y)).collect()).expect("planar points")
}

fn random_grid_points<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = (rng.random_range(0..GRID), rng.random_range(0..GRID));
        if fits(&pts, p, usize::MAX) {
            pts.push(p);
        }
    }
    pts
}

/// `n` points in general position, uniform on the `2^-20` grid of the unit square.
pub fn random_point_set<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PointSet {
    to_set(&random_grid_points(n, rng))
}

/// A random bijection together with the overlap it induces.
#[derive(Clone, Debug)]
pub struct BijectionTrial {
    /// `bijection[v]` is the point index assigned to vertex `v`.
    pub bijection: Vec<usize>,
    pub report: OverlapReport,
}

pub fn random_bijection_overlap<R: Rng + ?Sized>(h: &Hypergraph, set: &PointSet, rng: &mut R) -> Result<BijectionTrial> {
    if h.n() != set.len() {
        return Err(Error::EmbeddingMismatch { vertices: h.n(), points: set.len() });
    }
    let mut bijection: Vec<usize> = (0..set.len()).collect();
    bijection.shuffle(rng);
    let f = Embedding::from_bijection(set, &bijection)?;
    let report = overlap_value(h, &f)?;
    Ok(BijectionTrial { bijection, report })
}

/// Overlap fractions of `trials` independent random bijections.
#[derive(Clone, Debug)]
pub struct BijectionBatch {
    pub trials: Vec<BijectionTrial>,
}

impl BijectionBatch {
    pub fn fractions(&self) -> Vec<Rational> {
        self.trials.iter().map(|t| t.report.fraction.clone()).collect()
    }

    /// Nearest-rank empirical quantile, `p` in `[0, 1]`.
    pub fn quantile(&self, p: f64) -> Rational {
        let mut v = self.fractions();
        v.sort();
        let rank = libm::ceil(p * v.len() as f64) as usize;
        v[rank.clamp(1, v.len()) - 1].clone()
    }

    pub fn mean(&self) -> Rational {
        let sum: Rational = self.fractions().into_iter().sum();
        sum / BigInt::from(self.trials.len())
    }
}

pub fn random_bijection_batch(h: &Hypergraph, set: &PointSet, cfg: &ExperimentConfig) -> Result<BijectionBatch> {
    cfg.validate()?;
    let trials = (0..cfg.trials)
        .map(|t| random_bijection_overlap(h, set, &mut cfg.rng(t as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BijectionBatch { trials })
}

/// Martingale deviation bound for random bijections.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AzumaBound {
    /// `lambda sqrt(n)`.
    pub deviation: f64,
    /// `2 exp(-lambda^2 / (2 (2k+1)^2 Delta^2))`.
    pub probability: f64,
}

pub fn azuma_deviation_bound(k: usize, max_degree: usize, n: usize, lambda: f64) -> AzumaBound {
    let t = (2 * k + 1) as f64 * max_degree as f64;
    AzumaBound { deviation: lambda * libm::sqrt(n as f64), probability: 2.0 * libm::exp(-lambda * lambda / (2.0 * t * t)) }
}

/// Outcome of an annealing run; `report` is the exact score of `embedding`.
#[derive(Clone, Debug)]
pub struct AnnealResult {
    pub embedding: PointSet,
    pub report: OverlapReport,
    pub steps: usize,
    pub accepted: usize,
    /// Best exact value after each step.
    pub trace: Vec<Rational>,
}

fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Simulated annealing over grid point placements, minimizing an exact score.
///
/// Proposals move one point by a random offset shrinking with the
/// temperature; every visited state is scored exactly, and the best state
/// so far is returned, so a longer run never returns a larger value.
fn anneal(
    start: Vec<(i64, i64)>,
    cfg: &ExperimentConfig,
    rng: &mut ChaCha8Rng,
    score: &mut dyn FnMut(&PointSet) -> Result<OverlapReport>,
) -> Result<AnnealResult> {
    let n = start.len();
    let mut cur = start;
    let mut cur_report = score(&to_set(&cur))?;
    let mut best = (cur.clone(), cur_report.clone());
    let mut trace = Vec::with_capacity(cfg.steps);
    let mut accepted = 0;
    let mut temp = cfg.initial_temperature;
    for _ in 0..cfg.steps {
        let i = rng.random_range(0..n);
        let reach = ((GRID as f64) * (0.002 + 0.25 * temp / cfg.initial_temperature)) as i64;
        let dx = rng.random_range(-reach..=reach);
        let dy = rng.random_range(-reach..=reach);
        let p = ((cur[i].0 + dx).clamp(0, GRID - 1), (cur[i].1 + dy).clamp(0, GRID - 1));
        let u: f64 = rng.random();
        if p != cur[i] && fits(&cur, p, i) {
            let mut next = cur.clone();
            next[i] = p;
            let r = score(&to_set(&next))?;
            let delta = to_f64(&r.fraction) - to_f64(&cur_report.fraction);
            if delta <= 0.0 || u < libm::exp(-delta / temp) {
                cur = next;
                cur_report = r;
                accepted += 1;
                if cur_report.fraction < best.1.fraction {
                    best = (cur.clone(), cur_report.clone());
                }
            }
        }
        trace.push(best.1.fraction.clone());
        temp *= cfg.cooling;
    }
    Ok(AnnealResult { embedding: to_set(&best.0), report: best.1, steps: cfg.steps, accepted, trace })
}

/// Planar embedding of `h` with small exact overlap found by annealing;
/// its value is an upper bound on `c(h)`.
pub fn adversarial_embedding(h: &Hypergraph, cfg: &ExperimentConfig) -> Result<AnnealResult> {
    cfg.validate()?;
    if h.arity() != 3 {
        return Err(Error::UnsupportedDimension { required: 2, found: h.arity().saturating_sub(1) });
    }
    let mut rng = cfg.rng(0);
    let start = random_grid_points(h.n(), &mut rng);
    anneal(start, cfg, &mut rng, &mut |set| overlap_value(h, &Embedding::new(set.clone())))
}

/// Named configurations in general position used as a baseline.
pub fn structured_family(n: usize) -> Vec<(&'static str, PointSet)> {
    let mut out = Vec::new();
    // convex position on a parabola
    let convex: Vec<(i64, i64)> = (0..n as i64).map(|i| (i * 1000 + 17, i * i * 37 + 5)).collect();
    out.push(("convex", convex));
    // perturbed grid
    let side = (1..).find(|s| s * s >= n).unwrap_or(1) as i64;
    let grid: Vec<(i64, i64)> = (0..n as i64).map(|i| ((i % side) * 1000 + (i * i) % 13, (i / side) * 1000 + (i * i * i) % 17)).collect();
    out.push(("grid", grid));
    // three clusters on parabolic arcs
    let clustered: Vec<(i64, i64)> = (0..n as i64)
        .map(|i| {
            let (c, j) = (i % 3, i / 3);
            let base = [(0, 0), (100_000, 3_000), (40_000, 90_000)][c as usize];
            (base.0 + j * 100, base.1 + j * j * 7 + c)
        })
        .collect();
    out.push(("clustered", clustered));
    out.into_iter().filter(|(_, p)| {
        (0..p.len()).all(|i| fits(&p[..i], p[i], usize::MAX))
    }).map(|(name, p)| (name, to_set(&p))).collect()
}

/// Upper estimate of `c(K_n^3)`: the least deep-point fraction over the
/// structured family and `cfg.trials` annealing chains.
pub fn estimate_c_complete(n: usize, cfg: &ExperimentConfig) -> Result<OverlapEstimate> {
    cfg.validate()?;
    if n < 3 {
        return Err(Error::InvalidParameter(alloc::format!("need at least 3 points, got {n}")));
    }
    let mut best: Option<(Rational, &'static str, PointSet, Point)> = None;
    let mut consider = |fraction: Rational, method: &'static str, set: PointSet, witness: Point| {
        if best.as_ref().is_none_or(|b| fraction < b.0) {
            best = Some((fraction, method, set, witness));
        }
    };
    for (name, set) in structured_family(n) {
        let r = deep_point_complete(&set)?;
        consider(r.fraction, name, set, r.witness);
    }
    for chain in 0..cfg.trials {
        let mut rng = cfg.rng(chain as u64);
        let start = random_grid_points(n, &mut rng);
        let r = anneal(start, cfg, &mut rng, &mut |set| deep_point_complete(set))?;
        consider(r.report.fraction, "annealing", r.embedding, r.report.witness);
    }
    let (upper, upper_method, witness, witness_point) = best.expect("structured family or chains");
    let (lower, lower_method) = if n == 3 { (Some(rat(1, 1)), Some("single-triangle")) } else { (None, None) };
    Ok(OverlapEstimate { n, upper, upper_method, witness, witness_point, lower, lower_method })
}

/// Estimates for each `n`, for extrapolating the trend.
pub fn c_complete_trend(ns: &[usize], cfg: &ExperimentConfig) -> Result<Vec<OverlapEstimate>> {
    ns.iter().map(|&n| estimate_c_complete(n, cfg)).collect()
}

/// Deep-point fractions before and after replacing each point by a tight cluster.
#[derive(Clone, Debug)]
pub struct DuplicationCheck {
    pub original: Rational,
    pub duplicated: Rational,
    /// Fraction of triples of the duplicated set with two points in one cluster.
    pub degenerate_fraction: Rational,
    /// `duplicated <= original + degenerate_fraction`.
    pub holds: bool,
}

/// Replace every point of a generated set by `copies` points at distance
/// about `2^-40` from it.
pub fn duplicate_points<R: Rng + ?Sized>(set: &PointSet, copies: usize, rng: &mut R) -> Result<PointSet> {
    if set.dim() != 2 || copies == 0 {
        return Err(Error::InvalidParameter("need a planar set and at least one copy".into()));
    }
    let tiny = Rational::new(1.into(), BigInt::from(1u64 << 40));
    loop {
        let mut pts = Vec::with_capacity(set.len() * copies);
        for p in set.points() {
            for _ in 0..copies {
                let (a, b) = (rng.random_range(-1000i64..=1000), rng.random_range(-1000i64..=1000));
                let c = p.coords();
                pts.push(Point::xy(&c[0] + &tiny * BigInt::from(a), &c[1] + &tiny * BigInt::from(b)));
            }
        }
        let out = PointSet::planar(pts)?;
        if out.general_position() {
            return Ok(out);
        }
    }
}

pub fn duplication_check<R: Rng + ?Sized>(set: &PointSet, copies: usize, rng: &mut R) -> Result<DuplicationCheck> {
    let original = deep_point_complete(set)?.fraction;
    let dup = duplicate_points(set, copies, rng)?;
    let duplicated = deep_point_complete(&dup)?.fraction;
    let (n, m) = (set.len() as u64, dup.len() as u64);
    let spread = binomial(n, 3) * (copies as u64).pow(3);
    let total = binomial(m, 3);
    let degenerate_fraction = Rational::new(BigInt::from(total - spread), BigInt::from(total));
    let holds = duplicated <= &original + &degenerate_fraction;
    Ok(DuplicationCheck { original, duplicated, degenerate_fraction, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::random_regular_hypergraph;

    fn small_cfg() -> ExperimentConfig {
        ExperimentConfig { trials: 3, steps: 40, ..Default::default() }
    }

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig { trials: 0, ..Default::default() }.validate().is_err());
        assert!(ExperimentConfig { cooling: 1.0, ..Default::default() }.validate().is_err());
        assert!(ExperimentConfig::default().validate().is_ok());
    }

    #[test]
    fn azuma_examples() {
        assert_eq!(azuma_deviation_bound(3, 1, 10, 0.0).probability, 2.0);
        let b = azuma_deviation_bound(3, 1, 10, 7.0).probability;
        assert!((b - 2.0 * libm::exp(-0.5)).abs() < 1e-12);
        assert!(azuma_deviation_bound(3, 1, 10, 8.0).probability < b);
        assert!(azuma_deviation_bound(3, 2, 10, 7.0).probability > b);
    }

    #[test]
    fn complete_hypergraph_ignores_the_bijection() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let set = random_point_set(8, &mut rng);
        let h = Hypergraph::complete(8, 3);
        let deep = deep_point_complete(&set).unwrap().fraction;
        let batch = random_bijection_batch(&h, &set, &small_cfg()).unwrap();
        assert!(batch.fractions().iter().all(|f| *f == deep));
    }

    #[test]
    fn batches_are_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let set = random_point_set(12, &mut rng);
        let h = random_regular_hypergraph(12, 3, 2, &mut rng, 100).unwrap();
        let a = random_bijection_batch(&h, &set, &small_cfg()).unwrap();
        let b = random_bijection_batch(&h, &set, &small_cfg()).unwrap();
        assert_eq!(a.fractions(), b.fractions());
        assert!(a.quantile(0.0) <= a.quantile(1.0));
    }

    #[test]
    fn single_edge_is_always_covered() {
        let h = Hypergraph::new(3, 3, alloc::vec![alloc::vec![0, 1, 2]]).unwrap();
        let r = adversarial_embedding(&h, &small_cfg()).unwrap();
        assert_eq!(r.report.fraction, rat(1, 1));
    }

    #[test]
    fn longer_runs_never_do_worse() {
        let h = Hypergraph::complete(7, 3);
        let short = adversarial_embedding(&h, &ExperimentConfig { steps: 20, ..small_cfg() }).unwrap();
        let long = adversarial_embedding(&h, &ExperimentConfig { steps: 60, ..small_cfg() }).unwrap();
        assert!(long.report.fraction <= short.report.fraction);
        assert_eq!(long.trace[19], short.report.fraction);
        // the witness reproduces its value
        assert_eq!(overlap_value(&h, &Embedding::new(long.embedding.clone())).unwrap().fraction, long.report.fraction);
    }

    #[test]
    fn first_vertices_hypergraph_keeps_half() {
        // edges contain vertices 0 and 1
        let n = 7;
        let edges = (2..n).map(|v| alloc::vec![0, 1, v]).collect();
        let h = Hypergraph::new(n, 3, edges).unwrap();
        let r = adversarial_embedding(&h, &small_cfg()).unwrap();
        assert!(r.report.fraction >= rat(1, 2));
    }

    #[test]
    fn small_complete_estimates() {
        let e3 = estimate_c_complete(3, &small_cfg()).unwrap();
        assert_eq!(e3.upper, rat(1, 1));
        assert_eq!(e3.lower, Some(rat(1, 1)));
        let e4 = estimate_c_complete(4, &small_cfg()).unwrap();
        let family_min = structured_family(4).iter().map(|(_, s)| deep_point_complete(s).unwrap().fraction).min().unwrap();
        assert_eq!(e4.upper, family_min);
        let e6 = estimate_c_complete(6, &small_cfg()).unwrap();
        assert!(e6.upper <= structured_family(6).iter().map(|(_, s)| deep_point_complete(s).unwrap().fraction).min().unwrap());
    }

    #[test]
    fn duplication_is_soft_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let set = random_point_set(6, &mut rng);
        let c = duplication_check(&set, 2, &mut rng).unwrap();
        assert!(c.holds, "{c:?}");
    }
}
