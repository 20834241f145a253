use alloc::vec::Vec;

use super::homogeneity::classify_planar;
use super::{Frame, Homogeneity, HomogeneityOptions};
use crate::error::{Error, Result};
use crate::exact::Sign;
use crate::geom::lattice::{cross_sign, dot_sign, Dir};
use crate::geom::{rat, Point};

/// A line through `q`, given by a second point on it, with the indices of
/// the points strictly left of, strictly right of, and on it.
#[derive(Clone, Debug, PartialEq)]
pub struct LineThrough {
    pub q: Point,
    pub through: Point,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub on: Vec<usize>,
}

fn side(line: &Dir, d: &Dir) -> Sign {
    cross_sign(line, d)
}

fn split(line: &Dir, dirs: &[Dir], ids: &[usize]) -> [Vec<usize>; 3] {
    let mut out: [Vec<usize>; 3] = Default::default();
    for &i in ids {
        let slot = match side(line, &dirs[i]) {
            Sign::Positive => 0,
            Sign::Negative => 1,
            Sign::Zero => 2,
        };
        out[slot].push(i);
    }
    out
}

/// The line through `q` and a point of `ids` minimizing the larger strict
/// side; both strict sides have at most `floor(|ids|/2)` points.
fn halving(dirs: &[Dir], ids: &[usize]) -> Option<(Dir, [Vec<usize>; 3])> {
    let mut best: Option<(Dir, [Vec<usize>; 3])> = None;
    for &p in ids {
        let parts = split(&dirs[p], dirs, ids);
        let worse = parts[0].len().max(parts[1].len());
        if best.as_ref().is_none_or(|(_, b)| worse < b[0].len().max(b[1].len())) {
            best = Some((dirs[p].clone(), parts));
        }
    }
    best
}

/// A line through `q` with at most `floor(|s|/2)` points of `s` strictly on
/// each side. For empty `s` the horizontal line is returned.
pub fn ham_sandwich_line_through(q: &Point, s: &[Point]) -> Result<LineThrough> {
    if q.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: 2, found: q.dim() });
    }
    if s.iter().any(|p| p == q) {
        return Err(Error::CoincidentPoint);
    }
    let horizontal = Point::xy(&q.coords()[0] + rat(1, 1), q.coords()[1].clone());
    if s.is_empty() {
        return Ok(LineThrough { q: q.clone(), through: horizontal, left: Vec::new(), right: Vec::new(), on: Vec::new() });
    }
    let frame = Frame::new(q, s)?;
    let ids: Vec<usize> = (0..s.len()).collect();
    let (dir, [left, right, on]) = halving(&frame.dirs, &ids).expect("non-empty");
    // a point on the ray of `dir`, so that left means counterclockwise
    let through = s[on.iter().copied().find(|&i| dot_sign(&dir, &frame.dirs[i]) == Sign::Positive).expect("defining point")].clone();
    Ok(LineThrough { q: q.clone(), through, left, right, on })
}

/// Result of the iterative extraction.
#[derive(Clone, Debug)]
pub struct Extraction {
    /// Kept indices into each input set.
    pub subsets: Vec<Vec<usize>>,
    pub status: Homogeneity,
    /// Halving steps actually performed.
    pub steps: usize,
    /// `floor(|S_i|/64) - 8`, clamped at zero.
    pub guaranteed_min: Vec<usize>,
    /// Whether every subset reached its guaranteed size.
    pub meets_size: bool,
}

/// The six nonempty proper subsets of `{0, 1, 2}` in a fixed order.
const SUBSETS: [&[usize]; 6] = [&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2]];

fn fits_open_half_plane(dirs: &[Dir], sets: &[Vec<usize>]) -> bool {
    let all: Vec<Dir> = sets.iter().flatten().map(|&i| dirs[i].clone()).collect();
    !all.is_empty() && super::homogeneity::narrow_arc(&all).is_some()
}

/// Shrink planar point sets to homogeneous subsets with respect to `q`.
///
/// Follows the six-step halving over proper index subsets: for `X`, with `a`
/// the least index in `X` and `b` the least outside it, the line through `q`
/// halving the third set cuts each set; `a` and `b` keep their larger
/// strict sides (ties toward the side holding the lexicographically least
/// point) and the third set follows `a` or `b` according to `X`. Points on
/// a cutting line are dropped. The result is always checked exactly.
pub fn extract_homogeneous_subsets(q: &Point, sets: &[Vec<Point>]) -> Result<Extraction> {
    if q.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: 2, found: q.dim() });
    }
    if sets.len() != 3 {
        return Err(Error::InvalidParameter(alloc::format!("need 3 sets, got {}", sets.len())));
    }
    if sets.iter().any(Vec::is_empty) {
        return Err(Error::Infeasible("empty input set".into()));
    }
    let all: Vec<Point> = sets.iter().flatten().cloned().collect();
    if all.iter().any(|p| p == q) {
        return Err(Error::CoincidentPoint);
    }
    let frame = Frame::new(q, &all)?;
    let dirs = &frame.dirs;
    let mut offset = 0;
    let mut cur: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let r = (offset..offset + s.len()).collect();
            offset += s.len();
            r
        })
        .collect();
    let opts = HomogeneityOptions::default();
    let classify = |cur: &[Vec<usize>]| {
        let d: Vec<Vec<Dir>> = cur.iter().map(|s| s.iter().map(|&i| dirs[i].clone()).collect()).collect();
        classify_planar([&d[0], &d[1], &d[2]], &opts)
    };
    let mut steps = 0;
    for x in SUBSETS {
        if cur.iter().any(Vec::is_empty) || fits_open_half_plane(dirs, &cur) {
            break;
        }
        if matches!(classify(&cur), Homogeneity::All | Homogeneity::None) {
            break;
        }
        let a = x[0];
        let b = (0..3).find(|i| !x.contains(i)).expect("proper subset");
        let c = 3 - a - b;
        steps += 1;
        let Some((line, _)) = halving(dirs, &cur[c]) else { break };
        let keep = |ids: &[usize]| -> (Vec<usize>, Sign) {
            let [l, r, _] = split(&line, dirs, ids);
            let least = |v: &[usize]| v.iter().map(|&i| &all[i]).min().cloned();
            let left_wins = match l.len().cmp(&r.len()) {
                core::cmp::Ordering::Greater => true,
                core::cmp::Ordering::Less => false,
                core::cmp::Ordering::Equal => match (least(&l), least(&r)) {
                    (Some(x), Some(y)) => x < y,
                    _ => true,
                },
            };
            if left_wins {
                (l, Sign::Positive)
            } else {
                (r, Sign::Negative)
            }
        };
        let (ka, sa) = keep(&cur[a]);
        let (kb, sb) = keep(&cur[b]);
        let side_of_c = if sa == sb || x.contains(&c) { sa } else { sb };
        let [lc, rc, _] = split(&line, dirs, &cur[c]);
        cur[a] = ka;
        cur[b] = kb;
        cur[c] = if side_of_c == Sign::Positive { lc } else { rc };
        if sa == sb {
            // everything now lies strictly on one side of the line
            break;
        }
    }
    if cur.iter().any(Vec::is_empty) {
        return Err(Error::Infeasible("a subset became empty; input sets are too small".into()));
    }
    let status = classify(&cur);
    if status.is_homogeneous() != Some(true) {
        return Err(Error::Infeasible(alloc::format!("extraction ended {}", status.name())));
    }
    let mut offset = 0;
    let subsets: Vec<Vec<usize>> = cur
        .iter()
        .zip(sets)
        .map(|(ids, s)| {
            let r = ids.iter().map(|&i| i - offset).collect();
            offset += s.len();
            r
        })
        .collect();
    let guaranteed_min: Vec<usize> = sets.iter().map(|s| (s.len() / 64).saturating_sub(8)).collect();
    let meets_size = subsets.iter().zip(&guaranteed_min).all(|(s, &g)| s.len() >= g);
    Ok(Extraction { subsets, status, steps, guaranteed_min, meets_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::homogeneity_test;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn compass_points() {
        let q = Point::from_ints(&[0, 0]);
        let s: Vec<Point> = [(5, 0), (0, 5), (-5, 0), (0, -5)].iter().map(|&(x, y)| Point::from_ints(&[x, y])).collect();
        let l = ham_sandwich_line_through(&q, &s).unwrap();
        assert_eq!(l.on.len(), 2);
        assert_eq!((l.left.len(), l.right.len()), (1, 1));
        assert!(ham_sandwich_line_through(&s[0], &s).is_err());
    }

    #[test]
    fn random_halving_lines() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = Point::xy(rat(1, 2), rat(1, 3));
        for _ in 0..100 {
            let m = rng.random_range(1..40);
            let s: Vec<Point> = (0..m).map(|_| Point::from_ints(&[rng.random_range(-50..50), rng.random_range(-50..50)])).collect();
            let l = ham_sandwich_line_through(&q, &s).unwrap();
            // recount against the orientation predicate
            let mut sides = [0usize; 2];
            for p in &s {
                match crate::geom::orientation(&l.q, &l.through, p).unwrap() {
                    Sign::Positive => sides[0] += 1,
                    Sign::Negative => sides[1] += 1,
                    Sign::Zero => {}
                }
            }
            assert_eq!(sides, [l.left.len(), l.right.len()]);
            assert!(sides[0] <= m / 2 && sides[1] <= m / 2);
        }
    }

    #[test]
    fn separated_clusters_are_kept_whole() {
        let q = Point::from_ints(&[0, 0]);
        let sets: Vec<Vec<Point>> = [(100, 0), (-50, 87), (-50, -87)]
            .iter()
            .map(|&(x, y)| (0..5).map(|i| Point::from_ints(&[x + i, y + i * i])).collect())
            .collect();
        let e = extract_homogeneous_subsets(&q, &sets).unwrap();
        assert_eq!(e.steps, 0);
        assert_eq!(e.status, Homogeneity::All);
        assert!(e.subsets.iter().all(|s| s.len() == 5));
    }

    #[test]
    fn random_sets_become_homogeneous() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let q = Point::from_ints(&[0, 0]);
        for _ in 0..4 {
            let sets: Vec<Vec<Point>> = (0..3)
                .map(|_| (0..200).map(|_| Point::xy(rat(rng.random_range(-10000..10000), 7), rat(rng.random_range(-10000..10000), 7))).collect())
                .collect();
            let e = extract_homogeneous_subsets(&q, &sets).unwrap();
            let kept: Vec<Vec<Point>> = e.subsets.iter().zip(&sets).map(|(ids, s)| ids.iter().map(|&i| s[i].clone()).collect()).collect();
            assert!(homogeneity_test(&q, &kept).unwrap().is_homogeneous().unwrap());
            assert!(e.meets_size);
        }
    }
}
