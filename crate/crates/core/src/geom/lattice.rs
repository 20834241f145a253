//! Planar exact kernel on an integer lattice.
//!
//! A planar point set is rescaled by the least common multiple of its
//! coordinate denominators so that every input point has integer
//! coordinates ([`LPoint`]). Derived points such as segment crossings are
//! kept in homogeneous form ([`HPoint`], `w > 0`). All predicates below are
//! exact.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::Point;
use crate::error::{Error, Result};
use crate::exact::{det2, det2_sign, Int, Sign};

/// Input point on the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPoint {
    pub x: Int,
    pub y: Int,
}

/// Homogeneous point `(x/w, y/w)` in lattice units, `w > 0`.
#[derive(Clone, Debug)]
pub struct HPoint {
    pub x: Int,
    pub y: Int,
    pub w: Int,
}

impl HPoint {
    pub fn from_lattice(p: &LPoint) -> HPoint {
        HPoint { x: p.x.clone(), y: p.y.clone(), w: Int::ONE }
    }

    /// Exact equality of the represented points.
    pub fn same_point(&self, other: &HPoint) -> bool {
        &self.x * &other.w == &other.x * &self.w && &self.y * &other.w == &other.y * &self.w
    }

    pub fn equals_lattice(&self, p: &LPoint) -> bool {
        self.x == &p.x * &self.w && self.y == &p.y * &self.w
    }
}

/// Integer direction vector.
#[derive(Clone, Debug)]
pub struct Dir {
    pub x: Int,
    pub y: Int,
}

impl Dir {
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn neg(&self) -> Dir {
        Dir { x: -&self.x, y: -&self.y }
    }

    /// 0 for angles in [0, pi), 1 for [pi, 2pi).
    fn half(&self) -> u8 {
        match self.y.sign() {
            Sign::Positive => 0,
            Sign::Negative => 1,
            Sign::Zero => {
                if self.x.sign() == Sign::Positive {
                    0
                } else {
                    1
                }
            }
        }
    }
}

/// Sign of the cross product `u x v`.
#[inline]
pub fn cross_sign(u: &Dir, v: &Dir) -> Sign {
    det2_sign(&u.x, &u.y, &v.x, &v.y)
}

/// Sign of the dot product `u . v`.
#[inline]
pub fn dot_sign(u: &Dir, v: &Dir) -> Sign {
    (&u.x * &v.x + &u.y * &v.y).sign()
}

/// Counterclockwise angular order starting from the positive x-axis.
/// Parallel directions with the same orientation compare equal.
pub fn angle_cmp(u: &Dir, v: &Dir) -> Ordering {
    let (hu, hv) = (u.half(), v.half());
    if hu != hv {
        return hu.cmp(&hv);
    }
    match cross_sign(u, v) {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    }
}

/// Orientation of three lattice points.
#[inline]
pub fn orient(a: &LPoint, b: &LPoint, c: &LPoint) -> Sign {
    det2_sign(&(&b.x - &a.x), &(&b.y - &a.y), &(&c.x - &a.x), &(&c.y - &a.y))
}

/// Orientation of `(a, b, q)` with `q` homogeneous.
#[inline]
pub fn orient_h(a: &LPoint, b: &LPoint, q: &HPoint) -> Sign {
    let qx = &q.x - &(&a.x * &q.w);
    let qy = &q.y - &(&a.y * &q.w);
    det2_sign(&(&b.x - &a.x), &(&b.y - &a.y), &qx, &qy)
}

/// Direction from `q` to `p`, scaled by the positive factor `q.w`.
#[inline]
pub fn dir_to(q: &HPoint, p: &LPoint) -> Dir {
    Dir { x: &(&p.x * &q.w) - &q.x, y: &(&p.y * &q.w) - &q.y }
}

/// Closed containment of `q` in triangle `abc`; the triangle must be non-degenerate.
pub fn in_triangle_h(q: &HPoint, a: &LPoint, b: &LPoint, c: &LPoint) -> bool {
    let s = orient(a, b, c);
    debug_assert!(s != Sign::Zero);
    let ok = |t: Sign| t == Sign::Zero || t == s;
    ok(orient_h(a, b, q)) && ok(orient_h(b, c, q)) && ok(orient_h(c, a, q))
}

/// Closed containment with a precomputed triangle orientation.
#[inline]
pub fn in_oriented_triangle_h(q: &HPoint, a: &LPoint, b: &LPoint, c: &LPoint, s: Sign) -> bool {
    let ok = |t: Sign| t == Sign::Zero || t == s;
    ok(orient_h(a, b, q)) && ok(orient_h(b, c, q)) && ok(orient_h(c, a, q))
}

/// Intersection of the lines `ab` and `cd`, or `None` when parallel.
pub fn line_intersection(a: &LPoint, b: &LPoint, c: &LPoint, d: &LPoint) -> Option<HPoint> {
    let r = Dir { x: &b.x - &a.x, y: &b.y - &a.y };
    let s = Dir { x: &d.x - &c.x, y: &d.y - &c.y };
    let den = det2(&r.x, &r.y, &s.x, &s.y);
    if den.is_zero() {
        return None;
    }
    // a + t r with t = ((c - a) x s) / (r x s)
    let num = det2(&(&c.x - &a.x), &(&c.y - &a.y), &s.x, &s.y);
    let (num, den) = if den.sign() == Sign::Negative { (-num, -den) } else { (num, den) };
    Some(HPoint { x: &(&a.x * &den) + &(&r.x * &num), y: &(&a.y * &den) + &(&r.y * &num), w: den })
}

/// Crossing point of the closed segments `ab` and `cd` when they cross at a
/// single point interior to both.
pub fn proper_crossing(a: &LPoint, b: &LPoint, c: &LPoint, d: &LPoint) -> Option<HPoint> {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 == Sign::Zero || o2 == Sign::Zero || o3 == Sign::Zero || o4 == Sign::Zero {
        return None;
    }
    if o1 == o2 || o3 == o4 {
        return None;
    }
    line_intersection(a, b, c, d)
}

/// A planar point set mapped onto the integer lattice.
#[derive(Clone, Debug)]
pub struct Lattice {
    scale: BigInt,
    pub points: Vec<LPoint>,
}

impl Lattice {
    pub fn new(points: &[Point]) -> Result<Lattice> {
        let mut scale = BigInt::one();
        for p in points {
            if p.dim() != 2 {
                return Err(Error::UnsupportedDimension { required: 2, found: p.dim() });
            }
            for c in p.coords() {
                scale = scale.lcm(c.denom());
            }
        }
        let points = points
            .iter()
            .map(|p| {
                let x = p.coords()[0].numer() * (&scale / p.coords()[0].denom());
                let y = p.coords()[1].numer() * (&scale / p.coords()[1].denom());
                LPoint { x: Int::from_bigint(x), y: Int::from_bigint(y) }
            })
            .collect();
        Ok(Lattice { scale, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Express an arbitrary planar point in lattice units.
    pub fn homogenize(&self, q: &Point) -> Result<HPoint> {
        if q.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: q.dim() });
        }
        let sx = &q.coords()[0] * BigRational::from_integer(self.scale.clone());
        let sy = &q.coords()[1] * BigRational::from_integer(self.scale.clone());
        let w = sx.denom().lcm(sy.denom());
        let x = sx.numer() * (&w / sx.denom());
        let y = sy.numer() * (&w / sy.denom());
        Ok(HPoint { x: Int::from_bigint(x), y: Int::from_bigint(y), w: Int::from_bigint(w) })
    }

    /// Back to original coordinates.
    pub fn to_point(&self, h: &HPoint) -> Point {
        let den = h.w.to_bigint() * &self.scale;
        Point::new(alloc::vec![
            BigRational::new(h.x.to_bigint(), den.clone()),
            BigRational::new(h.y.to_bigint(), den),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(x: i64, y: i64) -> LPoint {
        LPoint { x: Int::from(x), y: Int::from(y) }
    }

    #[test]
    fn crossing_of_diagonals() {
        let h = proper_crossing(&lp(0, 0), &lp(2, 2), &lp(0, 2), &lp(2, 0)).unwrap();
        assert!(h.equals_lattice(&lp(1, 1)));
        assert!(proper_crossing(&lp(0, 0), &lp(1, 0), &lp(0, 1), &lp(1, 1)).is_none());
        // touching at an endpoint is not a proper crossing
        assert!(proper_crossing(&lp(0, 0), &lp(2, 0), &lp(1, 0), &lp(1, 1)).is_none());
    }

    #[test]
    fn angular_order_is_ccw_from_x_axis() {
        let dirs: [(i64, i64); 6] = [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1), (1, -1)];
        for w in dirs.windows(2) {
            let u = Dir { x: Int::from(w[0].0), y: Int::from(w[0].1) };
            let v = Dir { x: Int::from(w[1].0), y: Int::from(w[1].1) };
            assert_eq!(angle_cmp(&u, &v), Ordering::Less);
        }
        let u = Dir { x: Int::from(2i64), y: Int::from(2i64) };
        let v = Dir { x: Int::from(1i64), y: Int::from(1i64) };
        assert_eq!(angle_cmp(&u, &v), Ordering::Equal);
    }

    #[test]
    fn lattice_round_trip() {
        use num_rational::BigRational;
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let pts = [Point::new(alloc::vec![r(1, 2), r(1, 3)]), Point::new(alloc::vec![r(3, 4), r(2, 1)])];
        let lat = Lattice::new(&pts).unwrap();
        assert_eq!(lat.points[0], lp(6, 4));
        let q = Point::new(alloc::vec![r(1, 5), r(7, 9)]);
        let h = lat.homogenize(&q).unwrap();
        assert_eq!(lat.to_point(&h), q);
    }
}
