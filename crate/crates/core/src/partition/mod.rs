//! Geometric partitions around a point: Ceder's three concurrent lines,
//! radial cones, homogeneity of set tuples, halving lines through a point,
//! and the iterative extraction of homogeneous subsets.

mod ceder;
mod cones;
mod extract;
mod homogeneity;

use alloc::vec::Vec;
use core::cmp::Ordering;

pub use ceder::{bukh_check, ceder_partition, ceder_partition_with, CederOptions, SectorPartition};
pub use cones::{radial_homogeneous_partition, RadialPartition};
pub use extract::{extract_homogeneous_subsets, ham_sandwich_line_through, Extraction, LineThrough};
pub use homogeneity::{homogeneity_audit, homogeneity_test, homogeneity_test_with, Homogeneity, HomogeneityAudit, HomogeneityOptions, TestPath};

use crate::error::{Error, Result};
use crate::exact::{Int, Sign};
use crate::geom::lattice::{cross_sign, dir_to, dot_sign, Dir, Lattice};
use crate::geom::{Point, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    Equipartition,
    Cones,
    Generic,
}

impl PartitionKind {
    pub fn name(self) -> &'static str {
        match self {
            PartitionKind::Equipartition => "equipartition",
            PartitionKind::Cones => "cones",
            PartitionKind::Generic => "generic",
        }
    }
}

/// Blocks of point (or vertex) indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPartition {
    pub blocks: Vec<Vec<usize>>,
    pub kind: PartitionKind,
    pub apex: Option<Point>,
}

impl LabeledPartition {
    /// Checks that the blocks partition `0..n` and, for equipartitions and
    /// cones, that block sizes differ by at most one.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>, kind: PartitionKind, apex: Option<Point>) -> Result<LabeledPartition> {
        let mut seen = alloc::vec![false; n];
        for b in &blocks {
            for &v in b {
                if v >= n || seen[v] {
                    return Err(Error::InvalidParameter(alloc::format!("index {v} repeated or out of range")));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidParameter("blocks do not cover every index".into()));
        }
        if kind != PartitionKind::Generic {
            let min = blocks.iter().map(Vec::len).min().unwrap_or(0);
            let max = blocks.iter().map(Vec::len).max().unwrap_or(0);
            if max > min + 1 {
                return Err(Error::InvalidParameter("block sizes differ by more than one".into()));
            }
        }
        Ok(LabeledPartition { blocks, kind, apex })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Sizes of an equipartition of `n` into `k` blocks, larger blocks first.
pub fn equipartition_sizes(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| n / k + usize::from(i < n % k)).collect()
}

/// Planar points on a common lattice with their directions seen from `q`.
pub(crate) struct Frame {
    pub dirs: Vec<Dir>,
}

impl Frame {
    pub fn new(q: &Point, points: &[Point]) -> Result<Frame> {
        if q.dim() != 2 {
            return Err(Error::UnsupportedDimension { required: 2, found: q.dim() });
        }
        let lat = Lattice::new(points)?;
        let hq = lat.homogenize(q)?;
        let dirs = lat.points.iter().map(|p| dir_to(&hq, p)).collect();
        Ok(Frame { dirs })
    }
}

/// Closed containment of `q` in the triangle whose vertices lie in the given
/// directions from `q`: the three directions do not fit in an open half-plane.
pub(crate) fn contains_from_dirs(d: [&Dir; 3]) -> bool {
    if d.iter().any(|x| x.is_zero()) {
        return true;
    }
    for i in 0..3 {
        let u = d[i];
        let half_open = (0..3).filter(|&j| j != i).all(|j| match cross_sign(u, d[j]) {
            Sign::Positive => true,
            Sign::Zero => dot_sign(u, d[j]) == Sign::Positive,
            Sign::Negative => false,
        });
        if half_open {
            return false;
        }
    }
    true
}

/// Rotate `u` by minus the angle of `s`, so that `s` maps to the positive x-axis.
pub(crate) fn relative_to(s: &Dir, u: &Dir) -> Dir {
    Dir { x: &(&s.x * &u.x) + &(&s.y * &u.y), y: &(&s.x * &u.y) - &(&s.y * &u.x) }
}

/// Counterclockwise angle comparison measured from `s`.
pub(crate) fn ccw_from(s: &Dir, u: &Dir, v: &Dir) -> Ordering {
    crate::geom::lattice::angle_cmp(&relative_to(s, u), &relative_to(s, v))
}

/// Integer direction approximating angle `phi`, with `2^30` resolution.
pub(crate) fn dir_from_angle(phi: f64) -> Dir {
    let scale = (1u64 << 30) as f64;
    Dir {
        x: Int::from(libm::round(libm::cos(phi) * scale) as i64),
        y: Int::from(libm::round(libm::sin(phi) * scale) as i64),
    }
}

pub(crate) fn planar(set: &PointSet) -> Result<()> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: 2, found: set.dim() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64, y: i64) -> Dir {
        Dir { x: Int::from(x), y: Int::from(y) }
    }

    #[test]
    fn containment_from_directions() {
        assert!(contains_from_dirs([&d(1, 0), &d(-1, 1), &d(-1, -1)]));
        assert!(!contains_from_dirs([&d(1, 0), &d(1, 1), &d(0, 1)]));
        // q on the edge between opposite directions
        assert!(contains_from_dirs([&d(1, 0), &d(-1, 0), &d(0, 1)]));
        assert!(contains_from_dirs([&d(0, 0), &d(1, 0), &d(1, 1)]));
    }

    #[test]
    fn equipartition_sizes_differ_by_one() {
        assert_eq!(equipartition_sizes(10, 4), alloc::vec![3, 3, 2, 2]);
        assert!(LabeledPartition::new(3, alloc::vec![alloc::vec![0, 1, 2], alloc::vec![]], PartitionKind::Equipartition, None).is_err());
        assert!(LabeledPartition::new(3, alloc::vec![alloc::vec![0, 1], alloc::vec![1]], PartitionKind::Generic, None).is_err());
    }
}
