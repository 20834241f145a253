use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{ccw_from, contains_from_dirs, Frame, LabeledPartition};
use crate::error::{Error, Result};
use crate::exact::Sign;
use crate::geom::lattice::{angle_cmp, cross_sign, dot_sign, Dir};
use crate::geom::{next_combination, point_in_simplex, Point, PointSet, Rational};

/// Outcome of a homogeneity test of `d + 1` sets with respect to `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Homogeneity {
    /// Every transversal simplex contains `q`.
    All,
    /// No transversal simplex contains `q`.
    None,
    /// Some do and some do not.
    Mixed,
    /// The budget ran out before a decision.
    Unknown,
}

impl Homogeneity {
    pub fn is_homogeneous(self) -> Option<bool> {
        match self {
            Homogeneity::All | Homogeneity::None => Some(true),
            Homogeneity::Mixed => Some(false),
            Homogeneity::Unknown => Option::None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Homogeneity::All => "all",
            Homogeneity::None => "none",
            Homogeneity::Mixed => "mixed",
            Homogeneity::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestPath {
    /// Brute force within budget, then separation, then the planar sweep.
    Auto,
    /// Every transversal, ignoring the budget.
    Brute,
    /// Angular separation only; may return `Unknown`.
    Separation,
    /// Planar pair sweep, exact in `O(|A||B| log |C|)`.
    Sweep,
}

#[derive(Clone, Debug)]
pub struct HomogeneityOptions {
    /// Largest product of set sizes enumerated directly.
    pub brute_budget: u64,
    /// Largest `|A||B|` for the planar sweep.
    pub sweep_budget: u64,
    pub path: TestPath,
}

impl Default for HomogeneityOptions {
    fn default() -> Self {
        HomogeneityOptions { brute_budget: 1_000_000, sweep_budget: 10_000_000, path: TestPath::Auto }
    }
}

pub fn homogeneity_test(q: &Point, sets: &[Vec<Point>]) -> Result<Homogeneity> {
    homogeneity_test_with(q, sets, &HomogeneityOptions::default())
}

pub fn homogeneity_test_with(q: &Point, sets: &[Vec<Point>], opts: &HomogeneityOptions) -> Result<Homogeneity> {
    let d = q.dim();
    if sets.len() != d + 1 {
        return Err(Error::InvalidParameter(alloc::format!("need {} sets in dimension {d}, got {}", d + 1, sets.len())));
    }
    for s in sets {
        if s.is_empty() {
            return Err(Error::InvalidParameter("empty set".into()));
        }
        if let Some(p) = s.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
    }
    if d == 2 {
        let all: Vec<Point> = sets.iter().flatten().cloned().collect();
        let frame = Frame::new(q, &all)?;
        let mut split = Vec::with_capacity(3);
        let mut at = 0;
        for s in sets {
            split.push(&frame.dirs[at..at + s.len()]);
            at += s.len();
        }
        return Ok(classify_planar([split[0], split[1], split[2]], opts));
    }
    let product = sets.iter().try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64));
    let within = product.is_some_and(|p| p <= opts.brute_budget);
    match opts.path {
        TestPath::Brute => brute_general(q, sets),
        TestPath::Auto if within => brute_general(q, sets),
        _ => Ok(Homogeneity::Unknown),
    }
}

fn brute_general(q: &Point, sets: &[Vec<Point>]) -> Result<Homogeneity> {
    let mut idx = alloc::vec![0usize; sets.len()];
    let (mut yes, mut no) = (false, false);
    loop {
        let simplex: Vec<Point> = idx.iter().zip(sets).map(|(&i, s)| s[i].clone()).collect();
        if point_in_simplex(q, &simplex)? {
            yes = true;
        } else {
            no = true;
        }
        if yes && no {
            return Ok(Homogeneity::Mixed);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(if yes { Homogeneity::All } else { Homogeneity::None });
            }
            idx[k] += 1;
            if idx[k] < sets[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub(crate) fn classify_planar(sets: [&[Dir]; 3], opts: &HomogeneityOptions) -> Homogeneity {
    let product = sets.iter().map(|s| s.len() as u64).product::<u64>();
    match opts.path {
        TestPath::Brute => brute_planar(sets),
        TestPath::Separation => separation(sets),
        TestPath::Sweep => sweep(sets),
        TestPath::Auto => {
            if product <= opts.brute_budget {
                return brute_planar(sets);
            }
            let s = separation(sets);
            if s != Homogeneity::Unknown {
                return s;
            }
            let mut sizes: Vec<u64> = sets.iter().map(|s| s.len() as u64).collect();
            sizes.sort_unstable();
            if sizes[0] * sizes[1] <= opts.sweep_budget {
                sweep(sets)
            } else {
                Homogeneity::Unknown
            }
        }
    }
}

fn brute_planar(sets: [&[Dir]; 3]) -> Homogeneity {
    let (mut yes, mut no) = (false, false);
    for a in sets[0] {
        for b in sets[1] {
            for c in sets[2] {
                if contains_from_dirs([a, b, c]) {
                    yes = true;
                } else {
                    no = true;
                }
                if yes && no {
                    return Homogeneity::Mixed;
                }
            }
        }
    }
    if yes {
        Homogeneity::All
    } else {
        Homogeneity::None
    }
}

/// Closed angular arc from `start` counterclockwise to `end`.
#[derive(Clone, Debug)]
pub(crate) struct Arc {
    pub start: Dir,
    pub end: Dir,
}

impl Arc {
    pub fn contains(&self, x: &Dir) -> bool {
        ccw_from(&self.start, x, &self.end) != Ordering::Greater
    }

    pub fn meets(&self, other: &Arc) -> bool {
        self.contains(&other.start) || other.contains(&self.start)
    }

    pub fn reflected(&self) -> Arc {
        Arc { start: self.start.neg(), end: self.end.neg() }
    }
}

/// The arc spanned by `dirs` when they fit in an open half-plane, i.e. when
/// one cyclic gap exceeds a half-turn.
pub(crate) fn narrow_arc(dirs: &[Dir]) -> Option<Arc> {
    if dirs.iter().any(Dir::is_zero) {
        return None;
    }
    let mut sorted: Vec<&Dir> = dirs.iter().collect();
    sorted.sort_by(|a, b| angle_cmp(a, b));
    let m = sorted.len();
    if angle_cmp(sorted[0], sorted[m - 1]) == Ordering::Equal {
        return Some(Arc { start: sorted[0].clone(), end: sorted[0].clone() });
    }
    for i in 0..m {
        let (u, v) = (sorted[i], sorted[(i + 1) % m]);
        // gap from u counterclockwise to v exceeds pi
        if cross_sign(u, v) == Sign::Negative {
            return Some(Arc { start: v.clone(), end: u.clone() });
        }
    }
    None
}

/// Transversal simplices can only change status when two vertices from
/// different sets become antipodal as seen from `q`; if no arc meets the
/// reflection of another the tuple is homogeneous.
fn separation(sets: [&[Dir]; 3]) -> Homogeneity {
    let arcs: Vec<Option<Arc>> = sets.iter().map(|s| narrow_arc(s)).collect();
    let separated = arcs.iter().all(Option::is_some) && {
        let a: Vec<&Arc> = arcs.iter().flatten().collect();
        (0..3).all(|i| (0..3).all(|j| i == j || !a[i].meets(&a[j].reflected())))
    };
    let first = contains_from_dirs([&sets[0][0], &sets[1][0], &sets[2][0]]);
    if separated {
        return if first { Homogeneity::All } else { Homogeneity::None };
    }
    // extreme transversals may still exhibit a disagreement
    let ends: Vec<Vec<&Dir>> = arcs
        .iter()
        .zip(sets.iter())
        .map(|(a, s)| match a {
            Some(a) => alloc::vec![&a.start, &a.end],
            None => s.iter().collect(),
        })
        .collect();
    if ends.iter().map(Vec::len).product::<usize>() <= 4096 {
        for a in &ends[0] {
            for b in &ends[1] {
                for c in &ends[2] {
                    if contains_from_dirs([a, b, c]) != first {
                        return Homogeneity::Mixed;
                    }
                }
            }
        }
    }
    Homogeneity::Unknown
}

struct Sorted<'a> {
    dirs: Vec<&'a Dir>,
    zeros: usize,
}

impl<'a> Sorted<'a> {
    fn new(s: &'a [Dir]) -> Sorted<'a> {
        let mut dirs: Vec<&Dir> = s.iter().filter(|d| !d.is_zero()).collect();
        dirs.sort_by(|a, b| angle_cmp(a, b));
        Sorted { zeros: s.len() - dirs.len(), dirs }
    }

    fn lower(&self, x: &Dir) -> usize {
        self.dirs.partition_point(|d| angle_cmp(d, x) == Ordering::Less)
    }

    fn upper(&self, x: &Dir) -> usize {
        self.dirs.partition_point(|d| angle_cmp(d, x) != Ordering::Greater)
    }

    /// Directions in the closed arc from `s` counterclockwise to `e`.
    fn count_arc(&self, s: &Dir, e: &Dir) -> usize {
        let n = if angle_cmp(s, e) != Ordering::Greater {
            self.upper(e) - self.lower(s)
        } else {
            self.dirs.len() - self.lower(s) + self.upper(e)
        };
        n + self.zeros
    }
}

/// For each pair from the two smallest sets, the third vertices completing a
/// containing triangle form the closed cone spanned by the reflected pair;
/// count them by binary search.
fn sweep(sets: [&[Dir]; 3]) -> Homogeneity {
    let mut order = [0, 1, 2];
    order.sort_by_key(|&i| sets[i].len());
    let (a_set, b_set, c_set) = (sets[order[0]], sets[order[1]], sets[order[2]]);
    let c = Sorted::new(c_set);
    let full = c_set.len();
    let (mut yes, mut no) = (false, false);
    for a in a_set {
        for b in b_set {
            let k = if a.is_zero() || b.is_zero() {
                full
            } else {
                match cross_sign(a, b) {
                    Sign::Zero if dot_sign(a, b) == Sign::Negative => full,
                    Sign::Zero => {
                        let r = a.neg();
                        c.count_arc(&r, &r)
                    }
                    Sign::Positive => c.count_arc(&a.neg(), &b.neg()),
                    Sign::Negative => c.count_arc(&b.neg(), &a.neg()),
                }
            };
            if k > 0 {
                yes = true;
            }
            if k < full {
                no = true;
            }
            if yes && no {
                return Homogeneity::Mixed;
            }
        }
    }
    if yes {
        Homogeneity::All
    } else {
        Homogeneity::None
    }
}

/// Homogeneity statistics over all `(d+1)`-tuples of blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneityAudit {
    pub tuples: u64,
    pub homogeneous: u64,
    pub non_homogeneous: u64,
    pub unknown: u64,
    /// `homogeneous / tuples`; unknown tuples count against it.
    pub fraction: Rational,
}

/// Test every `(d+1)`-tuple of blocks of `partition` (indices into `set`).
pub fn homogeneity_audit(set: &PointSet, partition: &LabeledPartition, q: &Point, opts: &HomogeneityOptions) -> Result<HomogeneityAudit> {
    let d = set.dim();
    if q.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: q.dim() });
    }
    let k = partition.blocks.len();
    if partition.blocks.iter().any(Vec::is_empty) {
        return Err(Error::InvalidParameter("empty block".into()));
    }
    let mut audit = HomogeneityAudit { tuples: 0, homogeneous: 0, non_homogeneous: 0, unknown: 0, fraction: Rational::from_integer(0.into()) };
    if k < d + 1 {
        audit.fraction = Rational::from_integer(1.into());
        return Ok(audit);
    }
    let frame = if d == 2 { Some(Frame::new(q, set.points())?) } else { None };
    let blocks: Vec<Vec<Dir>> = match &frame {
        Some(f) => partition.blocks.iter().map(|b| b.iter().map(|&i| f.dirs[i].clone()).collect()).collect(),
        None => Vec::new(),
    };
    let mut idx: Vec<usize> = (0..=d).collect();
    loop {
        let status = if d == 2 {
            classify_planar([&blocks[idx[0]], &blocks[idx[1]], &blocks[idx[2]]], opts)
        } else {
            let sets: Vec<Vec<Point>> = idx.iter().map(|&b| partition.blocks[b].iter().map(|&i| set.points()[i].clone()).collect()).collect();
            homogeneity_test_with(q, &sets, opts)?
        };
        audit.tuples += 1;
        match status.is_homogeneous() {
            Some(true) => audit.homogeneous += 1,
            Some(false) => audit.non_homogeneous += 1,
            Option::None => audit.unknown += 1,
        }
        if !next_combination(&mut idx, k) {
            break;
        }
    }
    audit.fraction = Rational::new(audit.homogeneous.into(), audit.tuples.into());
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_ints(&[x, y])).collect()
    }

    fn with(path: TestPath) -> HomogeneityOptions {
        HomogeneityOptions { path, ..Default::default() }
    }

    #[test]
    fn clusters_around_q() {
        let q = Point::from_ints(&[0, 0]);
        let sets = [pts(&[(10, 0), (10, 1)]), pts(&[(-5, 9), (-6, 9)]), pts(&[(-5, -9), (-6, -8)])];
        assert_eq!(homogeneity_test(&q, &sets).unwrap(), Homogeneity::All);
        assert_eq!(homogeneity_test_with(&q, &sets, &with(TestPath::Separation)).unwrap(), Homogeneity::All);
        assert_eq!(homogeneity_test_with(&q, &sets, &with(TestPath::Sweep)).unwrap(), Homogeneity::All);
    }

    #[test]
    fn one_half_plane() {
        let q = Point::from_ints(&[0, 0]);
        let sets = [pts(&[(1, 1), (2, 5)]), pts(&[(-3, 2)]), pts(&[(5, 1), (4, 4)])];
        for path in [TestPath::Auto, TestPath::Brute, TestPath::Separation, TestPath::Sweep] {
            assert_eq!(homogeneity_test_with(&q, &sets, &with(path)).unwrap(), Homogeneity::None);
        }
    }

    #[test]
    fn straddling_reflection() {
        let q = Point::from_ints(&[0, 0]);
        // second set straddles the reflection of the first
        let sets = [pts(&[(10, 0)]), pts(&[(-10, 1), (-10, -1)]), pts(&[(0, 10)])];
        assert_eq!(homogeneity_test(&q, &sets).unwrap(), Homogeneity::Mixed);
        assert_eq!(homogeneity_test_with(&q, &sets, &with(TestPath::Sweep)).unwrap(), Homogeneity::Mixed);
    }

    #[test]
    fn three_dimensional_brute() {
        let q = Point::from_ints(&[1, 1, 1]);
        let sets = [
            alloc::vec![Point::from_ints(&[0, 0, 0])],
            alloc::vec![Point::from_ints(&[8, 0, 0]), Point::from_ints(&[9, 0, 0])],
            alloc::vec![Point::from_ints(&[0, 8, 0])],
            alloc::vec![Point::from_ints(&[0, 0, 8])],
        ];
        assert_eq!(homogeneity_test(&q, &sets).unwrap(), Homogeneity::All);
        let tight = HomogeneityOptions { brute_budget: 1, ..Default::default() };
        assert_eq!(homogeneity_test_with(&q, &sets, &tight).unwrap(), Homogeneity::Unknown);
    }

    #[test]
    fn paths_agree_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = Point::from_ints(&[0, 0]);
        for _ in 0..300 {
            let sets: Vec<Vec<Point>> = (0..3)
                .map(|_| {
                    let (cx, cy) = (rng.random_range(-20..=20), rng.random_range(-20..=20));
                    let r = rng.random_range(1..8);
                    (0..rng.random_range(1..6))
                        .map(|_| Point::xy(rat(cx * 4 + rng.random_range(-r..=r), 4), rat(cy * 4 + rng.random_range(-r..=r), 4)))
                        .filter(|p| *p != q)
                        .collect::<Vec<_>>()
                })
                .collect();
            if sets.iter().any(Vec::is_empty) {
                continue;
            }
            let brute = homogeneity_test_with(&q, &sets, &with(TestPath::Brute)).unwrap();
            assert_eq!(homogeneity_test_with(&q, &sets, &with(TestPath::Sweep)).unwrap(), brute);
            let sep = homogeneity_test_with(&q, &sets, &with(TestPath::Separation)).unwrap();
            assert!(sep == Homogeneity::Unknown || sep == brute, "{sep:?} vs {brute:?}");
            // generic oracle, where every transversal is a proper triangle
            if let Ok(g) = brute_general(&q, &sets) {
                assert_eq!(g, brute);
            }
        }
    }

    #[test]
    fn audit_of_singletons_is_total() {
        let set = PointSet::planar(pts(&[(1, 0), (0, 1), (-1, 0), (0, -1), (3, 3)])).unwrap();
        let blocks = (0..5).map(|i| alloc::vec![i]).collect();
        let part = LabeledPartition::new(5, blocks, super::super::PartitionKind::Generic, None).unwrap();
        let audit = homogeneity_audit(&set, &part, &Point::xy(rat(1, 7), rat(1, 9)), &Default::default()).unwrap();
        assert_eq!(audit.tuples, 10);
        assert_eq!(audit.homogeneous, 10);
        assert_eq!(audit.fraction, rat(1, 1));
    }
}
