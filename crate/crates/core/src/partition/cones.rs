use alloc::vec::Vec;

use super::homogeneity::Arc;
use super::{equipartition_sizes, planar, Frame, LabeledPartition, PartitionKind};
use crate::error::{Error, Result};
use crate::geom::lattice::angle_cmp;
use crate::geom::{binomial, Point, PointSet, Rational};

/// Radial cone partition with its reflection audit.
#[derive(Clone, Debug)]
pub struct RadialPartition {
    pub partition: LabeledPartition,
    /// Block triples in which some block's angular span meets the reflection
    /// of another's. Every non-homogeneous triple is among them.
    pub reflection_triples: u64,
    /// `2k(k-2)`.
    pub bound: u64,
    /// `reflection_triples / C(k, 3)`, at most `12/(k-1)`.
    pub fraction: Rational,
}

/// Split the points into `k` angular runs around `q` of equal size (±1).
///
/// Runs start at the positive x-axis and proceed counterclockwise; points on
/// a common ray stay in angular order and may be split between neighbours.
pub fn radial_homogeneous_partition(set: &PointSet, q: &Point, k: usize) -> Result<RadialPartition> {
    planar(set)?;
    let n = set.len();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(alloc::format!("cannot split {n} points into {k} cones")));
    }
    let frame = Frame::new(q, set.points())?;
    if frame.dirs.iter().any(|d| d.is_zero()) {
        return Err(Error::CoincidentPoint);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| angle_cmp(&frame.dirs[a], &frame.dirs[b]).then(a.cmp(&b)));
    let mut blocks = Vec::with_capacity(k);
    let mut arcs = Vec::with_capacity(k);
    let mut at = 0;
    for size in equipartition_sizes(n, k) {
        let run = &order[at..at + size];
        arcs.push(Arc { start: frame.dirs[run[0]].clone(), end: frame.dirs[run[size - 1]].clone() });
        blocks.push(run.to_vec());
        at += size;
    }
    let partition = LabeledPartition::new(n, blocks, PartitionKind::Cones, Some(q.clone()))?;
    let reflected: Vec<Arc> = arcs.iter().map(Arc::reflected).collect();
    let meets = |i: usize, j: usize| arcs[i].meets(&reflected[j]);
    let mut reflection_triples = 0;
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                let t = [a, b, c];
                if (0..3).any(|i| (0..3).any(|j| i != j && meets(t[i], t[j]))) {
                    reflection_triples += 1;
                }
            }
        }
    }
    let k64 = k as u64;
    let bound = 2 * k64 * k64.saturating_sub(2);
    let triples = binomial(k64, 3);
    let fraction = if triples == 0 {
        Rational::from_integer(0.into())
    } else {
        Rational::new(reflection_triples.into(), triples.into())
    };
    Ok(RadialPartition { partition, reflection_triples, bound, fraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;
    use crate::partition::{homogeneity_audit, HomogeneityOptions};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cross() -> PointSet {
        PointSet::planar(
            [(-1, 10), (1, 10), (10, 1), (10, -1), (1, -10), (-1, -10), (-10, -1), (-10, 1)]
                .iter()
                .map(|&(x, y)| Point::from_ints(&[x, y]))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn symmetric_cross_matches_brute_force() {
        let set = cross();
        let q = Point::from_ints(&[0, 0]);
        // rotate the start of the runs so each cone holds one arm
        let rotated = PointSet::planar(set.points().iter().map(|p| Point::xy(&p.coords()[0] - &p.coords()[1], &p.coords()[0] + &p.coords()[1])).collect()).unwrap();
        let r = radial_homogeneous_partition(&rotated, &q, 4).unwrap();
        for b in &r.partition.blocks {
            assert_eq!(b.len(), 2);
        }
        let audit = homogeneity_audit(&rotated, &r.partition, &q, &HomogeneityOptions::default()).unwrap();
        assert_eq!(audit.tuples, 4);
        assert_eq!(r.reflection_triples, audit.non_homogeneous);
        assert_eq!(r.reflection_triples, 4);
    }

    #[test]
    fn reflection_count_bounds_true_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = Point::xy(rat(1, 3), rat(1, 7));
        for &k in &[5usize, 13, 25] {
            let set = PointSet::planar((0..k * 3).map(|_| Point::xy(rat(rng.random_range(-999..1000), 100), rat(rng.random_range(-999..1000), 100))).collect()).unwrap();
            let r = radial_homogeneous_partition(&set, &q, k).unwrap();
            let audit = homogeneity_audit(&set, &r.partition, &q, &HomogeneityOptions::default()).unwrap();
            assert!(audit.non_homogeneous <= r.reflection_triples);
            assert!(r.reflection_triples <= r.bound);
            assert!(r.fraction <= rat(12, k as i64 - 1));
        }
    }

    #[test]
    fn coincident_apex() {
        let set = cross();
        assert_eq!(radial_homogeneous_partition(&set, &Point::from_ints(&[1, 10]), 4).unwrap_err(), Error::CoincidentPoint);
        assert!(radial_homogeneous_partition(&set, &Point::from_ints(&[0, 0]), 9).is_err());
    }
}
