use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{contains_from_dirs, dir_from_angle, equipartition_sizes, planar, Frame};
use crate::error::{Error, Result};
use crate::exact::Sign;
use crate::geom::lattice::{cross_sign, dir_to, dot_sign, Dir, Lattice};
use crate::geom::{Point, PointSet};

/// Three concurrent lines through `apex` and the induced six sectors.
///
/// The rays `r_0, r_1, r_2, -r_0, -r_1, -r_2` are in counterclockwise order
/// and sector `i` runs from ray `i` (inclusive) to ray `i + 1` (exclusive).
/// A point on a boundary ray therefore belongs to the sector
/// counterclockwise of that ray; a point at the apex belongs to sector 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorPartition {
    pub apex: Point,
    /// Integer direction vectors `r_0, r_1, r_2`.
    pub directions: [[i64; 2]; 3],
    /// Point indices per sector.
    pub sectors: [Vec<usize>; 6],
    /// Largest distance of a sector count from `[floor(n/6), ceil(n/6)]`.
    pub imbalance: usize,
}

fn rays(dirs: &[[i64; 2]; 3]) -> [Dir; 6] {
    let d = |v: [i64; 2]| Dir { x: v[0].into(), y: v[1].into() };
    let r = [d(dirs[0]), d(dirs[1]), d(dirs[2])];
    [r[0].clone(), r[1].clone(), r[2].clone(), r[0].neg(), r[1].neg(), r[2].neg()]
}

fn sector_of_dir(rays: &[Dir; 6], v: &Dir) -> usize {
    if v.is_zero() {
        return 0;
    }
    for i in 0..6 {
        let start = match cross_sign(&rays[i], v) {
            Sign::Positive => true,
            Sign::Zero => dot_sign(&rays[i], v) == Sign::Positive,
            Sign::Negative => false,
        };
        if start && cross_sign(v, &rays[(i + 1) % 6]) == Sign::Positive {
            return i;
        }
    }
    unreachable!("the six sectors cover every direction")
}

fn imbalance(n: usize, sectors: &[Vec<usize>; 6]) -> usize {
    let (lo, hi) = (n / 6, n.div_ceil(6));
    sectors.iter().map(|s| s.len().saturating_sub(hi).max(lo.saturating_sub(s.len()))).max().unwrap_or(0)
}

impl SectorPartition {
    /// Assign every point of `set` to a sector of the given lines.
    pub fn new(set: &PointSet, apex: Point, directions: [[i64; 2]; 3]) -> Result<SectorPartition> {
        planar(set)?;
        let r = rays(&directions);
        if cross_sign(&r[0], &r[1]) != Sign::Positive
            || cross_sign(&r[1], &r[2]) != Sign::Positive
            || cross_sign(&r[0], &r[2]) != Sign::Positive
        {
            return Err(Error::InvalidParameter("directions must be strictly counterclockwise within a half-turn".into()));
        }
        let frame = Frame::new(&apex, set.points())?;
        let mut sectors: [Vec<usize>; 6] = Default::default();
        for (i, d) in frame.dirs.iter().enumerate() {
            sectors[sector_of_dir(&r, d)].push(i);
        }
        let imbalance = imbalance(set.len(), &sectors);
        Ok(SectorPartition { apex, directions, sectors, imbalance })
    }

    pub fn counts(&self) -> [usize; 6] {
        core::array::from_fn(|i| self.sectors[i].len())
    }

    /// Sector containing `p` under the fixed boundary rule.
    pub fn sector_of(&self, p: &Point) -> Result<usize> {
        let lat = Lattice::new(core::slice::from_ref(p))?;
        let apex = lat.homogenize(&self.apex)?;
        Ok(sector_of_dir(&rays(&self.directions), &dir_to(&apex, &lat.points[0])))
    }
}

/// Search budget for [`ceder_partition_with`].
#[derive(Clone, Debug)]
pub struct CederOptions {
    /// Directions of the first line tried per sweep.
    pub theta_steps: usize,
    /// Apex positions tried along the first line.
    pub max_offsets: usize,
    /// Extra sweeps concentrated around the best direction so far.
    pub refine_rounds: usize,
}

impl Default for CederOptions {
    fn default() -> Self {
        CederOptions { theta_steps: 360, max_offsets: 160, refine_rounds: 3 }
    }
}

pub fn ceder_partition(set: &PointSet) -> Result<SectorPartition> {
    ceder_partition_with(set, &CederOptions::default())
}

struct Guess {
    score: usize,
    apex: [f64; 2],
    angles: [f64; 3],
}

fn mid_in(lo: f64, hi: f64) -> Option<f64> {
    (lo < hi).then_some(0.5 * (lo + hi))
}

/// Counts of sorted `vals` strictly below / at most `x`.
fn below(vals: &[f64], x: f64) -> usize {
    vals.partition_point(|&v| v < x)
}

/// For a first line in direction `theta` halving the points and an apex at
/// offset `s` along it, place the other two lines to split the upper half
/// exactly and the lower half as evenly as the gaps allow.
fn guess(pts: &[[f64; 2]], theta: f64, s: f64, proj: &mut Vec<f64>, alpha: &mut Vec<f64>, beta: &mut Vec<f64>) -> Option<Guess> {
    let n = pts.len();
    let (ct, st) = (libm::cos(theta), libm::sin(theta));
    proj.clear();
    proj.extend(pts.iter().map(|p| -p[0] * st + p[1] * ct));
    proj.sort_by(f64::total_cmp);
    let n_up = n / 2;
    let n_lo = n - n_up;
    let c = 0.5 * (proj[n_lo - 1] + proj[n_lo]);
    if proj[n_lo - 1] >= proj[n_lo] {
        return None;
    }
    let apex = [-c * st + s * ct, c * ct + s * st];
    alpha.clear();
    beta.clear();
    for p in pts {
        let (dx, dy) = (p[0] - apex[0], p[1] - apex[1]);
        let mut ang = libm::atan2(dy, dx) - theta;
        while ang < 0.0 {
            ang += 2.0 * PI;
        }
        while ang >= 2.0 * PI {
            ang -= 2.0 * PI;
        }
        if -dx * st + dy * ct > 0.0 {
            alpha.push(ang.min(PI));
        } else {
            beta.push((ang - PI).clamp(0.0, PI));
        }
    }
    if alpha.len() != n_up {
        return None;
    }
    alpha.sort_by(f64::total_cmp);
    beta.sort_by(f64::total_cmp);
    let u = equipartition_sizes(n_up, 3);
    let l = equipartition_sizes(n_lo, 3);
    let at = |v: &[f64], i: isize, m: usize| {
        if i < 0 {
            0.0
        } else if i as usize >= m {
            PI
        } else {
            v[i as usize]
        }
    };
    let a_lo = at(alpha, u[0] as isize - 1, n_up);
    let a_hi = at(alpha, u[0] as isize, n_up);
    let b_lo = at(alpha, (u[0] + u[1]) as isize - 1, n_up);
    let b_hi = at(alpha, (u[0] + u[1]) as isize, n_up);
    // a: want #{beta < a} = l0
    let want_a = (at(beta, l[0] as isize - 1, n_lo).max(a_lo), at(beta, l[0] as isize, n_lo).min(a_hi));
    let a = match mid_in(want_a.0, want_a.1) {
        Some(a) => a,
        None => {
            let x_min = below(beta, a_lo) + beta.iter().filter(|&&v| v == a_lo).count();
            if l[0] < x_min {
                let next = beta.iter().copied().find(|&v| v > a_lo).unwrap_or(a_hi).min(a_hi);
                0.5 * (a_lo + next)
            } else {
                let prev = beta.iter().copied().rev().find(|&v| v < a_hi).unwrap_or(a_lo).max(a_lo);
                0.5 * (prev + a_hi)
            }
        }
    };
    // b: want #{beta >= b} = l2
    let k = n_lo - l[2];
    let want_b = (at(beta, k as isize - 1, n_lo).max(b_lo), at(beta, k as isize, n_lo).min(b_hi));
    let b = match mid_in(want_b.0, want_b.1) {
        Some(b) => b,
        None => {
            let z_max = n_lo - below(beta, b_lo) - beta.iter().filter(|&&v| v == b_lo).count();
            if l[2] > z_max {
                let next = beta.iter().copied().find(|&v| v > b_lo).unwrap_or(b_hi).min(b_hi);
                0.5 * (b_lo + next)
            } else {
                let prev = beta.iter().copied().rev().find(|&v| v < b_hi).unwrap_or(b_lo).max(b_lo);
                0.5 * (prev + b_hi)
            }
        }
    };
    let x = below(beta, a);
    let z = n_lo - below(beta, b);
    let y = n_lo - x - z;
    let score = x.abs_diff(l[0]).max(y.abs_diff(l[1])).max(z.abs_diff(l[2]));
    Some(Guess { score, apex, angles: [theta, theta + a, theta + b] })
}

fn realize(set: &PointSet, g: &Guess) -> Option<SectorPartition> {
    let apex = Point::snap(&g.apex, 1 << 32);
    let dirs = g.angles.map(|a| {
        let d = dir_from_angle(a);
        [d.x.to_f64() as i64, d.y.to_f64() as i64]
    });
    SectorPartition::new(set, apex, dirs).ok()
}

/// Three concurrent lines splitting `set` into six nearly equal sectors.
///
/// The search is guided by floating point: for each direction of the first
/// line (a halving line) and each apex position along it, the other two
/// lines are placed to split one half exactly, and the best placements are
/// snapped to rationals and re-assigned exactly. The returned counts are
/// always exact; `imbalance` is zero when every sector holds `floor(n/6)` or
/// `ceil(n/6)` points.
pub fn ceder_partition_with(set: &PointSet, opts: &CederOptions) -> Result<SectorPartition> {
    planar(set)?;
    set.require_general_position()?;
    let n = set.len();
    if n < 6 {
        return Err(Error::InvalidParameter(alloc::format!("need at least 6 points, got {n}")));
    }
    let pts: Vec<[f64; 2]> = set.points().iter().map(|p| {
        let v = p.to_f64();
        [v[0], v[1]]
    }).collect();
    let (mut proj, mut alpha, mut beta) = (Vec::new(), Vec::new(), Vec::new());
    let mut best: Option<SectorPartition> = None;
    let mut best_theta = 0.0;
    let mut window = (0.0, 2.0 * PI);
    for round in 0..=opts.refine_rounds {
        let steps = opts.theta_steps.max(8);
        for t in 0..steps {
            // irrational offset keeps the sweep away from point-pair directions
            let theta = window.0 + (window.1 - window.0) * (t as f64 + core::f64::consts::FRAC_1_PI) / steps as f64;
            let (ct, st) = (libm::cos(theta), libm::sin(theta));
            let mut along: Vec<f64> = pts.iter().map(|p| p[0] * ct + p[1] * st).collect();
            along.sort_by(f64::total_cmp);
            let span = along[n - 1] - along[0] + 1.0;
            let mut offsets: Vec<f64> = alloc::vec![along[0] - span, along[n - 1] + span];
            let stride = (n / opts.max_offsets.max(2)).max(1);
            offsets.extend(along.windows(2).step_by(stride).map(|w| 0.5 * (w[0] + w[1])));
            for &s in &offsets {
                let Some(g) = guess(&pts, theta, s, &mut proj, &mut alpha, &mut beta) else { continue };
                let bar = best.as_ref().map_or(usize::MAX, |b| b.imbalance);
                if g.score >= bar {
                    continue;
                }
                if let Some(p) = realize(set, &g) {
                    if p.imbalance < bar {
                        best_theta = theta;
                        let done = p.imbalance == 0;
                        best = Some(p);
                        if done {
                            return Ok(best.expect("just set"));
                        }
                    }
                }
            }
        }
        let _ = round;
        let w = (window.1 - window.0) / steps as f64;
        window = (best_theta - 4.0 * w, best_theta + 4.0 * w);
    }
    match best {
        Some(p) if p.imbalance <= 1 => Ok(p),
        Some(p) => Err(Error::SearchFailed { best_imbalance: p.imbalance }),
        None => Err(Error::SearchFailed { best_imbalance: n }),
    }
}

/// Number of the 20 closed triangles on `six` that contain the apex.
///
/// `six[i]` must lie in sector `i`. For any such choice the count is at
/// least 8.
pub fn bukh_check(partition: &SectorPartition, six: &[Point]) -> Result<u64> {
    if six.len() != 6 {
        return Err(Error::InvalidParameter(alloc::format!("need six points, got {}", six.len())));
    }
    let frame = Frame::new(&partition.apex, six)?;
    let r = rays(&partition.directions);
    for (i, d) in frame.dirs.iter().enumerate() {
        if sector_of_dir(&r, d) != i {
            return Err(Error::InvalidParameter(alloc::format!("point {i} is not in sector {i}")));
        }
    }
    let mut count = 0;
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                if contains_from_dirs([&frame.dirs[a], &frame.dirs[b], &frame.dirs[c]]) {
                    count += 1;
                }
            }
        }
    }
    debug_assert!(count >= 8, "fewer than 8 triangles contain the apex");
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{point_in_simplex, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hexagon() -> PointSet {
        PointSet::planar(
            [(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)].iter().map(|&(x, y)| Point::from_ints(&[x, y])).collect(),
        )
        .unwrap()
    }

    #[test]
    fn hexagon_with_hand_placed_lines() {
        let set = hexagon();
        // rays just clockwise of the first three vertices
        let p = SectorPartition::new(&set, Point::from_ints(&[0, 0]), [[20, -1], [10, 9], [-10, 11]]).unwrap();
        assert_eq!(p.counts(), [1; 6]);
        let six: Vec<Point> = (0..6).map(|i| set.points()[p.sectors[i][0]].clone()).collect();
        assert_eq!(bukh_check(&p, &six).unwrap(), 14);
        // oracle: closed containment over all 20 triangles
        let mut brute = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let tri = [six[a].clone(), six[b].clone(), six[c].clone()];
                    brute += u64::from(point_in_simplex(&p.apex, &tri).unwrap());
                }
            }
        }
        assert_eq!(brute, 14);
    }

    #[test]
    fn search_finds_exact_partition_of_hexagon() {
        let p = ceder_partition(&hexagon()).unwrap();
        assert_eq!(p.counts(), [1; 6]);
    }

    #[test]
    fn random_twelve_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let set = loop {
                let s = PointSet::planar(
                    (0..12).map(|_| Point::xy(rat(rng.random_range(0..10000), 10000), rat(rng.random_range(0..10000), 10000))).collect(),
                )
                .unwrap();
                if s.general_position() {
                    break s;
                }
            };
            let p = ceder_partition(&set).unwrap();
            assert_eq!(p.counts(), [2; 6]);
            // recount with the public sector query
            for (i, sector) in p.sectors.iter().enumerate() {
                for &v in sector {
                    assert_eq!(p.sector_of(&set.points()[v]).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn opposite_sectors_are_reflections() {
        let set = hexagon();
        let p = SectorPartition::new(&set, Point::from_ints(&[0, 0]), [[20, -1], [10, 9], [-10, 11]]).unwrap();
        for i in 0..6 {
            let v = &set.points()[p.sectors[i][0]];
            let reflected = Point::xy(-v.coords()[0].clone(), -v.coords()[1].clone());
            assert_eq!(p.sector_of(&reflected).unwrap(), (i + 3) % 6);
        }
    }

    #[test]
    fn rejects_points_in_wrong_sectors() {
        let set = hexagon();
        let p = SectorPartition::new(&set, Point::from_ints(&[0, 0]), [[20, -1], [10, 9], [-10, 11]]).unwrap();
        let mut six: Vec<Point> = (0..6).map(|i| set.points()[p.sectors[i][0]].clone()).collect();
        six.swap(0, 1);
        assert!(bukh_check(&p, &six).is_err());
    }

    #[test]
    fn too_few_points() {
        let set = PointSet::planar(alloc::vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])]).unwrap();
        assert!(ceder_partition(&set).is_err());
    }
}
