//! Planar simplicial depth: the number of closed triangles spanned by a point
//! set that contain a query point.

use alloc::vec::Vec;

use super::lattice::{self, angle_cmp, cross_sign, dir_to, Dir, HPoint, LPoint, Lattice};
use super::{binomial, Point, PointSet};
use crate::error::{Error, Result};
use crate::exact::Sign;

/// Result of a depth query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Depth {
    /// Closed triangles containing the query point.
    pub count: u64,
    /// All triangles, `C(n, 3)`.
    pub total: u64,
    /// The query point coincides with an input point.
    pub coincident: bool,
}

fn require_planar(q: &Point, set: &PointSet) -> Result<()> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: 2, found: set.dim() });
    }
    if q.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: q.dim() });
    }
    Ok(())
}

/// Simplicial depth by radial sweep, `O(n log n)`.
pub fn simplicial_depth(q: &Point, set: &PointSet) -> Result<Depth> {
    require_planar(q, set)?;
    let lat = Lattice::new(set.points())?;
    let h = lat.homogenize(q)?;
    let mut scratch = DepthScratch::default();
    let (count, coincident) = scratch.depth(&h, &lat.points);
    Ok(Depth { count, total: binomial(set.len() as u64, 3), coincident })
}

/// Simplicial depth by enumerating every triple, `O(n^3)`.
pub fn simplicial_depth_brute(q: &Point, set: &PointSet) -> Result<Depth> {
    require_planar(q, set)?;
    let lat = Lattice::new(set.points())?;
    let h = lat.homogenize(q)?;
    let p = &lat.points;
    let n = p.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if in_closed_hull3(&h, &p[i], &p[j], &p[k]) {
                    count += 1;
                }
            }
        }
    }
    let coincident = p.iter().any(|x| h.equals_lattice(x));
    Ok(Depth { count, total: binomial(n as u64, 3), coincident })
}

/// Closed containment in the convex hull of three points, collinear or not.
pub(crate) fn in_closed_hull3(q: &HPoint, a: &LPoint, b: &LPoint, c: &LPoint) -> bool {
    if lattice::orient(a, b, c) != Sign::Zero {
        return lattice::in_triangle_h(q, a, b, c);
    }
    on_segment(q, a, b) || on_segment(q, b, c) || on_segment(q, a, c)
}

fn on_segment(q: &HPoint, a: &LPoint, b: &LPoint) -> bool {
    if a == b {
        return q.equals_lattice(a);
    }
    if lattice::orient_h(a, b, q) != Sign::Zero {
        return false;
    }
    let within = |lo: &crate::exact::Int, hi: &crate::exact::Int, v: &crate::exact::Int| {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        *v >= lo * &q.w && *v <= hi * &q.w
    };
    within(&a.x, &b.x, &q.x) && within(&a.y, &b.y, &q.y)
}

/// Reusable buffers for repeated depth queries against one point set.
#[derive(Default)]
pub(crate) struct DepthScratch {
    dirs: Vec<Dir>,
    groups: Vec<(Dir, u64)>,
}

impl DepthScratch {
    /// Depth of `q` and whether `q` coincides with an input point.
    ///
    /// A triangle misses `q` exactly when its three directions seen from `q`
    /// fit in an open half-plane. Each such triple is charged to its most
    /// clockwise direction class.
    pub(crate) fn depth(&mut self, q: &HPoint, pts: &[LPoint]) -> (u64, bool) {
        let n = pts.len() as u64;
        self.dirs.clear();
        let mut zero = 0u64;
        for p in pts {
            let d = dir_to(q, p);
            if d.is_zero() {
                zero += 1;
            } else {
                self.dirs.push(d);
            }
        }
        self.dirs.sort_unstable_by(angle_cmp);
        self.groups.clear();
        for d in self.dirs.drain(..) {
            match self.groups.last_mut() {
                Some((g, c)) if angle_cmp(g, &d) == core::cmp::Ordering::Equal => *c += 1,
                _ => self.groups.push((d, 1)),
            }
        }
        let m = self.groups.len();
        let mut missing = 0u64;
        let mut j = 1usize;
        let mut ahead = 0u64;
        for g in 0..m {
            if j <= g {
                j = g + 1;
                ahead = 0;
            }
            while j < g + m && cross_sign(&self.groups[g].0, &self.groups[j % m].0) == Sign::Positive {
                ahead += self.groups[j % m].1;
                j += 1;
            }
            let c = self.groups[g].1;
            missing += binomial(c, 3) + binomial(c, 2) * ahead + c * binomial(ahead, 2);
            if j > g + 1 {
                ahead -= self.groups[(g + 1) % m].1;
            }
        }
        (binomial(n, 3) - missing, zero > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hexagon() -> PointSet {
        // affine image of the regular hexagon (affine maps preserve containment)
        PointSet::planar(
            [(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)]
                .iter()
                .map(|&(x, y)| Point::from_ints(&[x, y]))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn centroid_of_three_points() {
        let set = PointSet::planar(alloc::vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[3, 0]),
            Point::from_ints(&[0, 3])
        ])
        .unwrap();
        let q = Point::from_ints(&[1, 1]);
        let d = simplicial_depth(&q, &set).unwrap();
        assert_eq!((d.count, d.total, d.coincident), (1, 1, false));
    }

    #[test]
    fn hexagon_center_has_depth_14() {
        let set = hexagon();
        let q = Point::from_ints(&[0, 0]);
        assert_eq!(simplicial_depth_brute(&q, &set).unwrap().count, 14);
        assert_eq!(simplicial_depth(&q, &set).unwrap().count, 14);
    }

    #[test]
    fn coincident_query_is_flagged() {
        let set = hexagon();
        let q = Point::from_ints(&[2, 0]);
        let fast = simplicial_depth(&q, &set).unwrap();
        let slow = simplicial_depth_brute(&q, &set).unwrap();
        assert!(fast.coincident && slow.coincident);
        assert_eq!(fast.count, slow.count);
        // every triangle with the vertex (2,0) contains it
        assert!(fast.count >= 10);
    }

    #[test]
    fn fast_path_matches_brute_force_on_random_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let pts = (0..12)
                .map(|_| Point::xy(rat(rng.random_range(0..64), 8), rat(rng.random_range(0..64), 8)))
                .collect();
            let set = PointSet::planar(pts).unwrap();
            for _ in 0..5 {
                let q = Point::xy(rat(rng.random_range(0..64), 8), rat(rng.random_range(0..64), 8));
                assert_eq!(
                    simplicial_depth(&q, &set).unwrap(),
                    simplicial_depth_brute(&q, &set).unwrap(),
                    "q = {q:?}"
                );
            }
        }
    }

    #[test]
    fn rejects_non_planar_sets() {
        let set = PointSet::new(3, alloc::vec![Point::from_ints(&[0, 0, 0])]).unwrap();
        assert!(simplicial_depth(&Point::from_ints(&[0, 0, 0]), &set).is_err());
    }
}
