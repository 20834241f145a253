//! Overlap of an embedded hypergraph: the largest fraction of hyperedge
//! simplices sharing a common point.
//!
//! In the plane the coverage count is upper semicontinuous, so its maximum
//! is attained on a vertex of the intersection of the covering triangles.
//! Every such vertex lies on a triangle side, so it suffices to maximize
//! coverage along each side. Along a segment `A + l (B - A)`, `l` in
//! `[0, 1]`, each triangle covers a closed interval of `l`, and the maximum
//! is a closed-interval stabbing problem solved by sorting endpoints.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::depth::DepthScratch;
use super::lattice::{proper_crossing, HPoint, LPoint, Lattice};
use super::{binomial, point_in_simplex, rat, Point, PointSet, Rational};
use crate::error::{Error, Result};
use crate::exact::{det2, Int, Sign};
use crate::hypergraph::Hypergraph;

/// Vertex `v` of a hypergraph is placed at `points[v]`.
#[derive(Clone, Debug)]
pub struct Embedding {
    points: PointSet,
}

impl Embedding {
    pub fn new(points: PointSet) -> Embedding {
        Embedding { points }
    }

    /// Vertex `v` goes to `set[bijection[v]]`.
    pub fn from_bijection(set: &PointSet, bijection: &[usize]) -> Result<Embedding> {
        if bijection.len() != set.len() {
            return Err(Error::EmbeddingMismatch { vertices: bijection.len(), points: set.len() });
        }
        let mut seen = alloc::vec![false; set.len()];
        for &i in bijection {
            if i >= set.len() || seen[i] {
                return Err(Error::InvalidParameter("map is not a bijection".into()));
            }
            seen[i] = true;
        }
        let pts = bijection.iter().map(|&i| set.points()[i].clone()).collect();
        Ok(Embedding { points: PointSet::new(set.dim(), pts)? })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Exact maximum over the plane.
    ExactArrangement,
    /// Maximum over a rational grid; a lower bound.
    Grid,
    /// Maximum over sampled points; a lower bound.
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactArrangement => "exact-arrangement",
            Method::Grid => "grid",
            Method::MonteCarlo => "monte-carlo",
        }
    }

    pub fn is_exact(self) -> bool {
        self == Method::ExactArrangement
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OverlapReport {
    pub witness: Point,
    pub covered: u64,
    pub total: u64,
    pub fraction: Rational,
    pub method: Method,
    /// Number of candidate points (or segments, for the exact sweep) examined.
    pub candidates: usize,
    /// The witness coincides with an embedded point.
    pub coincident: bool,
}

#[derive(Clone, Debug)]
pub struct OverlapOptions {
    /// `None` picks the exact method in the plane and Monte Carlo otherwise.
    pub method: Option<Method>,
    /// Random points for Monte Carlo.
    pub samples: usize,
    /// Grid resolution per axis.
    pub grid: usize,
    pub seed: u64,
}

impl Default for OverlapOptions {
    fn default() -> Self {
        OverlapOptions { method: None, samples: 2000, grid: 64, seed: 0 }
    }
}

fn check(h: &Hypergraph, f: &Embedding) -> Result<()> {
    if h.n() != f.len() {
        return Err(Error::EmbeddingMismatch { vertices: h.n(), points: f.len() });
    }
    if h.arity() != f.dim() + 1 {
        return Err(Error::DimensionMismatch { expected: h.arity() - 1, found: f.dim() });
    }
    f.points.require_general_position()
}

pub fn overlap_value(h: &Hypergraph, f: &Embedding) -> Result<OverlapReport> {
    overlap_value_with(h, f, &OverlapOptions::default())
}

pub fn overlap_value_with(h: &Hypergraph, f: &Embedding, opts: &OverlapOptions) -> Result<OverlapReport> {
    check(h, f)?;
    let method = opts.method.unwrap_or(if f.dim() == 2 { Method::ExactArrangement } else { Method::MonteCarlo });
    match method {
        Method::ExactArrangement => {
            if f.dim() != 2 {
                return Err(Error::UnsupportedDimension { required: 2, found: f.dim() });
            }
            exact_planar(h, f)
        }
        Method::Grid => grid_estimate(h, f, opts.grid),
        Method::MonteCarlo => monte_carlo(h, f, opts.samples, opts.seed),
    }
}

/// Number of hyperedge simplices containing `q`, by direct enumeration.
pub fn coverage_at(h: &Hypergraph, f: &Embedding, q: &Point) -> Result<u64> {
    check(h, f)?;
    let mut count = 0;
    let mut simplex = Vec::with_capacity(h.arity());
    for e in h.edges() {
        simplex.clear();
        simplex.extend(e.iter().map(|&v| f.points.points()[v].clone()));
        if point_in_simplex(q, &simplex)? {
            count += 1;
        }
    }
    Ok(count)
}

fn report(witness: Point, covered: u64, total: u64, method: Method, candidates: usize, f: &Embedding) -> OverlapReport {
    let fraction = if total == 0 {
        rat(0, 1)
    } else {
        BigRational::new(BigInt::from(covered), BigInt::from(total))
    };
    let coincident = f.points.points().contains(&witness);
    OverlapReport { witness, covered, total, fraction, method, candidates, coincident }
}

fn orient_value(a: &LPoint, b: &LPoint, c: &LPoint) -> Int {
    det2(&(&b.x - &a.x), &(&b.y - &a.y), &(&c.x - &a.x), &(&c.y - &a.y))
}

/// `num / den` with `den > 0`.
#[derive(Clone, Debug)]
struct Frac {
    num: Int,
    den: Int,
}

impl Frac {
    fn int(v: i64) -> Frac {
        Frac { num: Int::from(v), den: Int::ONE }
    }

    fn cmp(&self, other: &Frac) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

/// Closed sub-interval of `[0, 1]` where `A + l (B - A)` lies in the triangle,
/// or `None`.
fn clip(a: &LPoint, b: &LPoint, tri: [&LPoint; 3]) -> Option<(Frac, Frac)> {
    let s = super::lattice::orient(tri[0], tri[1], tri[2]);
    let mut lo = Frac::int(0);
    let mut hi = Frac::int(1);
    for (u, v) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
        let alpha = orient_value(u, v, a);
        let beta = orient_value(u, v, b);
        let (c0, c1) = match s {
            Sign::Positive => (alpha.clone(), &beta - &alpha),
            _ => (-alpha.clone(), &alpha - &beta),
        };
        // c0 + l c1 >= 0
        match c1.sign() {
            Sign::Zero => {
                if c0.sign() == Sign::Negative {
                    return None;
                }
            }
            Sign::Positive => {
                let bound = Frac { num: -c0, den: c1 };
                if bound.cmp(&lo) == Ordering::Greater {
                    lo = bound;
                }
            }
            Sign::Negative => {
                let bound = Frac { num: c0, den: -c1 };
                if bound.cmp(&hi) == Ordering::Less {
                    hi = bound;
                }
            }
        }
        if lo.cmp(&hi) == Ordering::Greater {
            return None;
        }
    }
    Some((lo, hi))
}

fn exact_planar(h: &Hypergraph, f: &Embedding) -> Result<OverlapReport> {
    let lat = Lattice::new(f.points.points())?;
    let p = &lat.points;
    let total = h.num_edges() as u64;
    if total == 0 {
        let witness = f.points.points().first().cloned().unwrap_or_else(|| Point::from_ints(&[0, 0]));
        return Ok(report(witness, 0, 0, Method::ExactArrangement, 0, f));
    }
    let mut segments = BTreeSet::new();
    for e in h.edges() {
        segments.insert((e[0], e[1]));
        segments.insert((e[1], e[2]));
        segments.insert((e[0], e[2]));
    }
    let mut best: Option<(u64, HPoint)> = None;
    let mut events: Vec<(Frac, bool)> = Vec::new();
    for &(i, j) in &segments {
        events.clear();
        for e in h.edges() {
            if let Some((lo, hi)) = clip(&p[i], &p[j], [&p[e[0]], &p[e[1]], &p[e[2]]]) {
                events.push((lo, true));
                events.push((hi, false));
            }
        }
        // starts before ends at equal parameters: intervals are closed
        events.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)));
        let mut count = 0u64;
        for (at, start) in &events {
            if *start {
                count += 1;
                if best.as_ref().is_none_or(|(c, _)| count > *c) {
                    best = Some((count, point_on_segment(&p[i], &p[j], at)));
                }
            } else {
                count -= 1;
            }
        }
    }
    let (covered, witness) = best.expect("every edge covers its own sides");
    Ok(report(lat.to_point(&witness), covered, total, Method::ExactArrangement, segments.len(), f))
}

fn point_on_segment(a: &LPoint, b: &LPoint, l: &Frac) -> HPoint {
    let x = &(&a.x * &l.den) + &(&(&b.x - &a.x) * &l.num);
    let y = &(&a.y * &l.den) + &(&(&b.y - &a.y) * &l.num);
    HPoint { x, y, w: l.den.clone() }
}

fn bounding_box(points: &[Point]) -> (Vec<Rational>, Vec<Rational>) {
    let d = points[0].dim();
    let mut lo = points[0].coords().to_vec();
    let mut hi = lo.clone();
    for p in points {
        for k in 0..d {
            if p.coords()[k] < lo[k] {
                lo[k] = p.coords()[k].clone();
            }
            if p.coords()[k] > hi[k] {
                hi[k] = p.coords()[k].clone();
            }
        }
    }
    (lo, hi)
}

fn best_of(h: &Hypergraph, f: &Embedding, cands: impl Iterator<Item = Point>, method: Method) -> Result<OverlapReport> {
    let mut best: Option<(u64, Point)> = None;
    let mut seen = 0;
    for q in cands {
        seen += 1;
        let c = coverage_at(h, f, &q)?;
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, q));
        }
    }
    let (covered, witness) = best.unwrap_or_else(|| (0, Point::new(alloc::vec![rat(0, 1); f.dim()])));
    Ok(report(witness, covered, h.num_edges() as u64, method, seen, f))
}

/// Maximum over a `res^d` grid spanning the bounding box of the points.
fn grid_estimate(h: &Hypergraph, f: &Embedding, res: usize) -> Result<OverlapReport> {
    let pts = f.points.points();
    if pts.is_empty() {
        return best_of(h, f, core::iter::empty(), Method::Grid);
    }
    let d = f.dim();
    let (lo, hi) = bounding_box(pts);
    let res = res.max(2);
    let step: Vec<Rational> = (0..d).map(|k| (&hi[k] - &lo[k]) / BigRational::from_integer(BigInt::from(res - 1))).collect();
    let total = res.checked_pow(d as u32).ok_or_else(|| Error::BudgetExceeded("grid too large".into()))?;
    let cands = (0..total).map(move |mut idx| {
        let coords = (0..d)
            .map(|k| {
                let i = idx % res;
                idx /= res;
                &lo[k] + &step[k] * BigRational::from_integer(BigInt::from(i))
            })
            .collect();
        Point::new(coords)
    });
    best_of(h, f, cands, Method::Grid)
}

/// Maximum over simplex centroids and random convex combinations of
/// hyperedge vertices. Always a lower bound.
fn monte_carlo(h: &Hypergraph, f: &Embedding, samples: usize, seed: u64) -> Result<OverlapReport> {
    let pts = f.points.points();
    let edges = h.edges();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cands: Vec<Point> = edges
        .iter()
        .map(|e| {
            let verts: Vec<&Point> = e.iter().map(|&v| &pts[v]).collect();
            Point::centroid(&verts)
        })
        .collect();
    if !edges.is_empty() {
        for _ in 0..samples {
            let e = &edges[rng.random_range(0..edges.len())];
            let verts: Vec<&Point> = e.iter().map(|&v| &pts[v]).collect();
            let raw: Vec<i64> = (0..verts.len()).map(|_| rng.random_range(1..=64)).collect();
            let sum: i64 = raw.iter().sum();
            let w: Vec<Rational> = raw.iter().map(|&r| rat(r, sum)).collect();
            cands.push(Point::combination(&verts, &w));
        }
    }
    best_of(h, f, cands.into_iter(), Method::MonteCarlo)
}

/// Deepest point of the complete 3-uniform hypergraph on `set`: the maximum
/// simplicial depth over input points and proper crossings of segments.
pub fn deep_point_complete(set: &PointSet) -> Result<OverlapReport> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: 2, found: set.dim() });
    }
    set.require_general_position()?;
    let f = Embedding::new(set.clone());
    let n = set.len();
    let total = binomial(n as u64, 3);
    if n < 3 {
        let witness = set.points().first().cloned().unwrap_or_else(|| Point::from_ints(&[0, 0]));
        return Ok(report(witness, 0, total, Method::ExactArrangement, 0, &f));
    }
    let lat = Lattice::new(set.points())?;
    let p = &lat.points;
    let mut scratch = DepthScratch::default();
    let mut best: Option<(u64, HPoint)> = None;
    let mut seen = 0usize;
    let mut consider = |q: HPoint, scratch: &mut DepthScratch| {
        let (c, _) = scratch.depth(&q, p);
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, q));
        }
    };
    for pt in p {
        consider(HPoint::from_lattice(pt), &mut scratch);
        seen += 1;
    }
    let segs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for (s, &(a, b)) in segs.iter().enumerate() {
        for &(c, d) in &segs[s + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if let Some(q) = proper_crossing(&p[a], &p[b], &p[c], &p[d]) {
                consider(q, &mut scratch);
                seen += 1;
            }
        }
    }
    let (covered, witness) = best.expect("at least one candidate");
    Ok(report(lat.to_point(&witness), covered, total, Method::ExactArrangement, seen, &f))
}
