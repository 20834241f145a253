//! Cell representatives of the arrangement of all lines through pairs of
//! points.
//!
//! Every closed-triangle containment pattern realizable in the plane is
//! realized on some cell of this arrangement (vertex, edge or face), so one
//! representative per cell is a complete candidate set for exact overlap
//! evaluation. Representatives are built exactly: vertices are line
//! intersections, edge points are midpoints of consecutive vertices along a
//! line, and face points step off an edge point along the normal by half the
//! distance to the next line.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{rat, Point, PointSet, Rational};
use crate::error::{Error, Result};

/// Representatives of every cell, grouped by cell dimension.
#[derive(Clone, Debug, Default)]
pub struct ArrangementCells {
    pub vertices: Vec<Point>,
    pub edges: Vec<Point>,
    /// Exactly one point per two-dimensional face.
    pub faces: Vec<Point>,
}

impl ArrangementCells {
    /// All representatives, vertices first.
    pub fn all(&self) -> Vec<Point> {
        let mut out = self.vertices.clone();
        out.extend(self.edges.iter().cloned());
        out.extend(self.faces.iter().cloned());
        out
    }
}

#[derive(Clone)]
struct Line {
    origin: [Rational; 2],
    dir: [Rational; 2],
}

fn cross(u: &[Rational; 2], v: &[Rational; 2]) -> Rational {
    &u[0] * &v[1] - &u[1] * &v[0]
}

impl Line {
    fn at(&self, t: &Rational) -> [Rational; 2] {
        [&self.origin[0] + t * &self.dir[0], &self.origin[1] + t * &self.dir[1]]
    }

    /// Parameter along the ray `from + u * dir` where it meets `self`.
    fn hit(&self, from: &[Rational; 2], dir: &[Rational; 2]) -> Option<Rational> {
        let den = cross(dir, &self.dir);
        if den.is_zero() {
            return None;
        }
        let diff = [&self.origin[0] - &from[0], &self.origin[1] - &from[1]];
        Some(cross(&diff, &self.dir) / den)
    }

    fn side(&self, p: &[Rational; 2]) -> i8 {
        let diff = [&p[0] - &self.origin[0], &p[1] - &self.origin[1]];
        let c = cross(&self.dir, &diff);
        if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        }
    }
}

fn to_point(p: [Rational; 2]) -> Point {
    let [x, y] = p;
    Point::xy(x, y)
}

/// Representatives of all cells of the line arrangement spanned by `set`.
pub fn arrangement_cells(set: &PointSet) -> Result<ArrangementCells> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: 2, found: set.dim() });
    }
    set.require_general_position()?;
    let pts = set.points();
    let n = pts.len();
    let coords = |i: usize| [pts[i].coords()[0].clone(), pts[i].coords()[1].clone()];
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = coords(i);
            let b = coords(j);
            lines.push(Line { dir: [&b[0] - &a[0], &b[1] - &a[1]], origin: a });
        }
    }
    let mut cells = ArrangementCells::default();
    if lines.is_empty() {
        // zero or one point: the whole plane is one face
        let p = pts.first().cloned().unwrap_or_else(|| Point::from_ints(&[0, 0]));
        if n == 1 {
            cells.vertices.push(p.clone());
            cells.faces.push(to_point([&p.coords()[0] + Rational::one(), p.coords()[1].clone()]));
        } else {
            cells.faces.push(p);
        }
        return Ok(cells);
    }

    let mut vertex_set = BTreeSet::new();
    let mut face_signatures = BTreeSet::new();
    for (li, line) in lines.iter().enumerate() {
        let mut params: Vec<Rational> = lines
            .iter()
            .enumerate()
            .filter(|&(lj, _)| lj != li)
            .filter_map(|(_, other)| other.hit(&line.origin, &line.dir))
            .collect();
        params.sort();
        params.dedup();
        for t in &params {
            vertex_set.insert(to_point(line.at(t)));
        }
        let mut edge_params = Vec::new();
        match (params.first(), params.last()) {
            (Some(lo), Some(hi)) => {
                edge_params.push(lo - Rational::one());
                for w in params.windows(2) {
                    edge_params.push((&w[0] + &w[1]) * rat(1, 2));
                }
                edge_params.push(hi + Rational::one());
            }
            _ => edge_params.push(Rational::zero()),
        }
        let normal = [-line.dir[1].clone(), line.dir[0].clone()];
        for t in &edge_params {
            let m = line.at(t);
            for sign in [1i64, -1] {
                let dir = [&normal[0] * rat(sign, 1), &normal[1] * rat(sign, 1)];
                let step = lines
                    .iter()
                    .enumerate()
                    .filter(|&(lj, _)| lj != li)
                    .filter_map(|(_, other)| other.hit(&m, &dir))
                    .filter(|u| u.is_positive())
                    .min()
                    .map(|u| u * rat(1, 2))
                    .unwrap_or_else(Rational::one);
                let f = [&m[0] + &step * &dir[0], &m[1] + &step * &dir[1]];
                let signature: Vec<i8> = lines.iter().map(|l| l.side(&f)).collect();
                if face_signatures.insert(signature) {
                    cells.faces.push(to_point(f));
                }
            }
            cells.edges.push(to_point(m));
        }
    }
    cells.vertices = vertex_set.into_iter().collect();
    Ok(cells)
}

/// One exact representative per cell (vertices, edges and faces) of the
/// arrangement of lines through pairs of points of `set`.
pub fn candidate_points(set: &PointSet) -> Result<Vec<Point>> {
    Ok(arrangement_cells(set)?.all())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point_in_simplex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_set(rng: &mut ChaCha8Rng, n: usize) -> PointSet {
        loop {
            let pts = (0..n)
                .map(|_| Point::xy(rat(rng.random_range(0..1000), 100), rat(rng.random_range(0..1000), 100)))
                .collect();
            let set = PointSet::planar(pts).unwrap();
            if set.general_position() {
                return set;
            }
        }
    }

    #[test]
    fn three_points_cut_the_plane_into_seven_faces() {
        let set = PointSet::planar(alloc::vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[4, 0]),
            Point::from_ints(&[1, 3])
        ])
        .unwrap();
        let cells = arrangement_cells(&set).unwrap();
        assert_eq!(cells.faces.len(), 7);
        assert_eq!(cells.vertices.len(), 3);
        assert!(candidate_points(&set).unwrap().len() >= 7);
    }

    #[test]
    fn five_points_have_at_most_56_faces() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let set = random_set(&mut rng, 5);
            let cells = arrangement_cells(&set).unwrap();
            assert!(cells.faces.len() <= 56, "{} faces", cells.faces.len());
            // 10 lines, five 4-fold points and 15 simple crossings: 1 + 10 + 15*1 + 5*3
            assert_eq!(cells.faces.len(), 41);
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        let set = PointSet::planar(alloc::vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[2, 2])
        ])
        .unwrap();
        assert_eq!(candidate_points(&set).unwrap_err(), Error::NotGeneralPosition);
    }

    fn pattern(set: &PointSet, q: &Point) -> u64 {
        let pts = set.points();
        let n = pts.len();
        let mut bits = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let tri = [pts[i].clone(), pts[j].clone(), pts[k].clone()];
                    if point_in_simplex(q, &tri).unwrap() {
                        bits |= 1 << bit;
                    }
                    bit += 1;
                }
            }
        }
        bits
    }

    #[test]
    fn grid_patterns_are_all_realized_by_candidates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let set = random_set(&mut rng, 6);
            let cands: BTreeSet<u64> = candidate_points(&set).unwrap().iter().map(|c| pattern(&set, c)).collect();
            // 60 x 60 grid over a box around the points, on a coarser denominator
            // so that some grid points hit lines exactly
            for gx in 0..60 {
                for gy in 0..60 {
                    let g = Point::xy(rat(gx * 20 - 100, 100), rat(gy * 20 - 100, 100));
                    assert!(cands.contains(&pattern(&set, &g)), "grid point {g:?}");
                }
            }
        }
    }
}
