//! Exact planar geometry: predicates, simplicial depth, arrangement cells and
//! overlap evaluation of embedded hypergraphs.

pub mod arrangement;
pub mod depth;
pub mod lattice;
pub mod overlap;

use alloc::vec::Vec;
use core::cell::OnceCell;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use crate::exact::Sign;
use lattice::Lattice;

pub use arrangement::{candidate_points, ArrangementCells};
pub use depth::{simplicial_depth, simplicial_depth_brute, Depth};
pub use overlap::{deep_point_complete, overlap_value, overlap_value_with, Embedding, Method, OverlapOptions, OverlapReport};

/// Exact rational scalar.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    /// Panics if `coords` is empty.
    pub fn new(coords: Vec<Rational>) -> Point {
        assert!(!coords.is_empty(), "points have dimension at least 1");
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn xy(x: Rational, y: Rational) -> Point {
        Point::new(alloc::vec![x, y])
    }

    /// Round floating coordinates to the nearest multiple of `1/denom`.
    pub fn snap(values: &[f64], denom: i64) -> Point {
        Point::new(
            values
                .iter()
                .map(|v| {
                    let n = libm::round(v * denom as f64) as i64;
                    rat(n, denom)
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn sub(&self, other: &Point) -> Vec<Rational> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()
    }

    /// Affine combination `sum w_i p_i` (weights need not sum to one).
    pub fn combination(points: &[&Point], weights: &[Rational]) -> Point {
        let d = points[0].dim();
        let mut out = alloc::vec![Rational::zero(); d];
        for (p, w) in points.iter().zip(weights) {
            for (o, c) in out.iter_mut().zip(&p.coords) {
                *o += c * w;
            }
        }
        Point::new(out)
    }

    pub fn centroid(points: &[&Point]) -> Point {
        let w = alloc::vec![rat(1, points.len() as i64); points.len()];
        Point::combination(points, &w)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An ordered list of same-dimension points with a cached general-position flag.
#[derive(Clone, Debug)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    general_position: OnceCell<bool>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<PointSet> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
        Ok(PointSet { dim, points, general_position: OnceCell::new() })
    }

    pub fn planar(points: Vec<Point>) -> Result<PointSet> {
        PointSet::new(2, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn general_position(&self) -> bool {
        *self.general_position.get_or_init(|| general_position_check(self))
    }

    pub fn require_general_position(&self) -> Result<()> {
        if self.general_position() {
            Ok(())
        } else {
            Err(Error::NotGeneralPosition)
        }
    }
}

fn determinant_sign(mut m: Vec<Vec<Rational>>) -> Sign {
    let n = m.len();
    let mut negate = false;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Sign::Zero;
        };
        if pivot != col {
            m.swap(pivot, col);
            negate = !negate;
        }
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    let mut sign = if negate { Sign::Negative } else { Sign::Positive };
    for (i, row) in m.iter().enumerate() {
        if row[i].is_negative() {
            sign = sign.flip();
        }
    }
    sign
}

/// Orientation of `d + 1` points in dimension `d`: the sign of
/// `det(p_1 - p_0, ..., p_d - p_0)`.
pub fn orientation_d(points: &[&Point]) -> Result<Sign> {
    let d = points.len().saturating_sub(1);
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
    }
    if d == 0 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    let rows = points[1..].iter().map(|p| p.sub(points[0])).collect();
    Ok(determinant_sign(rows))
}

/// Sign of the determinant of `(b - a, c - a)` for planar points.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Result<Sign> {
    for p in [a, b, c] {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: p.dim() });
        }
    }
    let (u, v) = (b.sub(a), c.sub(a));
    let det = &u[0] * &v[1] - &u[1] * &v[0];
    Ok(if det.is_zero() {
        Sign::Zero
    } else if det.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    })
}

/// Closed containment of `q` in the simplex spanned by `vertices`.
pub fn point_in_simplex(q: &Point, vertices: &[Point]) -> Result<bool> {
    let d = q.dim();
    if vertices.len() != d + 1 {
        return Err(Error::InvalidParameter(alloc::format!(
            "a simplex in dimension {d} needs {} vertices, got {}",
            d + 1,
            vertices.len()
        )));
    }
    let mut refs: Vec<&Point> = vertices.iter().collect();
    let base = orientation_d(&refs)?;
    if base == Sign::Zero {
        return Err(Error::DegenerateSimplex);
    }
    for i in 0..=d {
        let saved = refs[i];
        refs[i] = q;
        let s = orientation_d(&refs)?;
        refs[i] = saved;
        if s != Sign::Zero && s != base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the points are pairwise distinct and no `d + 1` of them are
/// affinely dependent.
pub fn general_position_check(set: &PointSet) -> bool {
    let pts = set.points();
    let d = set.dim();
    let n = pts.len();
    if d == 2 {
        let Ok(lat) = Lattice::new(pts) else { return false };
        let l = &lat.points;
        for i in 0..n {
            for j in i + 1..n {
                if l[i] == l[j] {
                    return false;
                }
                for k in j + 1..n {
                    if lattice::orient(&l[i], &l[j], &l[k]) == Sign::Zero {
                        return false;
                    }
                }
            }
        }
        return true;
    }
    for i in 0..n {
        for j in i + 1..n {
            if pts[i] == pts[j] {
                return false;
            }
        }
    }
    if n < d + 1 {
        return true;
    }
    let mut idx: Vec<usize> = (0..=d).collect();
    loop {
        let refs: Vec<&Point> = idx.iter().map(|&i| &pts[i]).collect();
        if matches!(orientation_d(&refs), Ok(Sign::Zero) | Err(_)) {
            return false;
        }
        if !next_combination(&mut idx, n) {
            return true;
        }
    }
}

/// Advance `idx` to the next k-subset of `0..n` in lexicographic order.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `n choose k` as u64.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
