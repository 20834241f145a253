//! Counting-measure versions of the regularity machinery: balanced partite
//! splits, density increments, superregular tuples and homogeneous covers.
//!
//! Densities follow the measure convention: for disjoint blocks
//! `d(W_1..W_h) = (crossing edges) / (|W_1| ... |W_h|)`, and the density of
//! a whole hypergraph is `h! |E| / n^h`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geom::{binomial, Point, PointSet, Rational};
use crate::hypergraph::{block_density, crossing_edges, Hypergraph};
use crate::partition::{
    extract_homogeneous_subsets, radial_homogeneous_partition, Homogeneity, LabeledPartition, PartitionKind,
};

fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Rational {
    Rational::new(a.into(), b.into())
}

fn product(blocks: &[Vec<usize>]) -> BigInt {
    blocks.iter().map(|b| BigInt::from(b.len())).product()
}

/// `h! |E| / n^h`.
pub fn measure_density(h: &Hypergraph) -> Rational {
    let arity = h.arity();
    let fact: BigInt = (1..=arity).map(BigInt::from).product();
    let denom = BigInt::from(h.n()).pow(arity as u32);
    if denom.is_zero() {
        return Rational::zero();
    }
    Rational::new(fact * BigInt::from(h.num_edges()), denom)
}

/// Blocks of a tuple with its density and the sizes/densities seen so far.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    pub blocks: Vec<Vec<usize>>,
    pub density: Rational,
    pub iteration: usize,
    pub history: Vec<(Vec<usize>, Rational)>,
}

impl DensityState {
    pub fn new(blocks: Vec<Vec<usize>>, density: Rational) -> DensityState {
        let sizes = blocks.iter().map(Vec::len).collect();
        DensityState { history: alloc::vec![(sizes, density.clone())], blocks, density, iteration: 0 }
    }

    fn advance(&mut self, blocks: Vec<Vec<usize>>, density: Rational) {
        debug_assert!(density > self.density, "density must increase");
        debug_assert!(blocks.iter().zip(&self.blocks).all(|(n, o)| n.len() <= o.len()));
        self.history.push((blocks.iter().map(Vec::len).collect(), density.clone()));
        self.blocks = blocks;
        self.density = density;
        self.iteration += 1;
    }
}

/// Balanced split of the vertex set into `h` blocks.
#[derive(Clone, Debug)]
pub struct PartiteSplit {
    pub blocks: Vec<Vec<usize>>,
    pub density: Rational,
    /// `d(H) / 2`, the guaranteed lower bound.
    pub target: Rational,
    /// Number of equal groups the vertices were cut into.
    pub groups: usize,
    /// Whether every assignment of groups to blocks was tried.
    pub exhaustive: bool,
}

const EXHAUSTIVE_ASSIGNMENTS: u128 = 5000;

/// Split the vertices into `h = arity` equal blocks with cross-density at
/// least half the hypergraph density.
///
/// Vertices are cut into `t = h g` consecutive groups, `g` the least divisor
/// of `n/h` that is at least `ceil(h / d(H))` (singletons if none), and the
/// groups are dealt to blocks by exhaustive search when the number of
/// assignments is small, otherwise by sampling plus swap improvement.
pub fn partite_split<R: Rng>(hg: &Hypergraph, rng: &mut R) -> Result<PartiteSplit> {
    let h = hg.arity();
    let n = hg.n();
    if h == 0 || !n.is_multiple_of(h) {
        return Err(Error::InvalidParameter(alloc::format!("arity {h} does not divide {n}")));
    }
    if hg.num_edges() == 0 {
        return Err(Error::Infeasible("hypergraph has density 0".into()));
    }
    let d = measure_density(hg);
    let target = &d / BigInt::from(2);
    let per_block = n / h;
    let want = (Rational::from_integer(BigInt::from(h)) / &d).ceil().to_integer();
    let g = (1..=per_block).find(|&g| per_block.is_multiple_of(g) && BigInt::from(g) >= want).unwrap_or(per_block);
    let t = h * g;
    let size = n / t;
    let groups: Vec<Vec<usize>> = (0..t).map(|i| (i * size..(i + 1) * size).collect()).collect();
    let assemble = |assign: &[usize]| -> Vec<Vec<usize>> {
        let mut blocks = alloc::vec![Vec::new(); h];
        for (grp, &b) in groups.iter().zip(assign) {
            blocks[b].extend_from_slice(grp);
        }
        blocks
    };
    let score = |assign: &[usize]| crossing_edges(hg, &assemble(assign)).expect("valid blocks");
    // t! / (g!)^h
    let count = (1..=t as u128).try_fold(1u128, |a, x| a.checked_mul(x)).map(|f| {
        let gf: u128 = (1..=g as u128).product();
        f / gf.pow(h as u32)
    });
    let exhaustive = count.is_some_and(|c| c <= EXHAUSTIVE_ASSIGNMENTS);
    let mut best: Option<(u64, Vec<usize>)> = None;
    if exhaustive {
        let mut assign = alloc::vec![0usize; t];
        let mut room = alloc::vec![g; h];
        enumerate_assignments(0, &mut assign, &mut room, &mut |a| {
            let s = score(a);
            if best.as_ref().is_none_or(|(b, _)| s > *b) {
                best = Some((s, a.to_vec()));
            }
        });
    } else {
        let base: Vec<usize> = (0..t).map(|i| i / g).collect();
        for _ in 0..64 {
            let mut a = base.clone();
            a.shuffle(rng);
            let mut s = score(&a);
            // swap groups between blocks while it helps
            let mut improved = true;
            while improved {
                improved = false;
                for i in 0..t {
                    for j in i + 1..t {
                        if a[i] == a[j] {
                            continue;
                        }
                        a.swap(i, j);
                        let s2 = score(&a);
                        if s2 > s {
                            s = s2;
                            improved = true;
                        } else {
                            a.swap(i, j);
                        }
                    }
                }
            }
            if best.as_ref().is_none_or(|(b, _)| s > *b) {
                best = Some((s, a));
            }
        }
    }
    let (_, assign) = best.expect("at least one assignment");
    let blocks = assemble(&assign);
    let density = block_density(hg, &blocks)?;
    if density < target {
        return Err(Error::Infeasible("no split reached half the density".into()));
    }
    Ok(PartiteSplit { blocks, density, target, groups: t, exhaustive })
}

fn enumerate_assignments(i: usize, assign: &mut [usize], room: &mut [usize], f: &mut impl FnMut(&[usize])) {
    if i == assign.len() {
        f(assign);
        return;
    }
    for b in 0..room.len() {
        if room[b] > 0 {
            room[b] -= 1;
            assign[i] = b;
            enumerate_assignments(i + 1, assign, room, f);
            room[b] += 1;
        }
    }
}

/// Result of one density increment.
#[derive(Clone, Debug, PartialEq)]
pub struct Increment {
    pub blocks: Vec<Vec<usize>>,
    pub density: Rational,
    /// `pattern[i]` is true when block `i` is `Y_i`, false for `W_i \ Y_i`.
    pub pattern: Vec<bool>,
    /// `c + (c - 2 delta) gamma / (1 - gamma)`.
    pub bound: Rational,
}

fn check_blocks(hg: &Hypergraph, blocks: &[Vec<usize>]) -> Result<()> {
    crossing_edges(hg, blocks).map(|_| ())
}

/// Given a witness `y` that `w` is not superregular, pick the pattern of
/// `Y_i` / `W_i \ Y_i` blocks (not all `Y_i`, product at least
/// `delta gamma / 2^h` of the original) with the largest density.
pub fn density_increment(
    hg: &Hypergraph,
    w: &[Vec<usize>],
    gamma: &Rational,
    delta: &Rational,
    y: &[Vec<usize>],
) -> Result<Increment> {
    let h = hg.arity();
    check_blocks(hg, w)?;
    if y.len() != h {
        return Err(Error::InvalidParameter("witness has the wrong number of blocks".into()));
    }
    if *gamma <= Rational::zero() || *gamma >= Rational::one() || *delta <= Rational::zero() {
        return Err(Error::InvalidParameter("need 0 < gamma < 1 and delta > 0".into()));
    }
    for (yi, wi) in y.iter().zip(w) {
        if yi.iter().any(|v| !wi.contains(v)) {
            return Err(Error::InvalidParameter("witness block is not a subset".into()));
        }
    }
    check_blocks(hg, y).map_err(|_| Error::InvalidParameter("witness blocks must be non-empty".into()))?;
    let pw = product(w);
    let py = product(y);
    if Rational::from_integer(py.clone()) < gamma * Rational::from_integer(pw.clone()) {
        return Err(Error::InvalidParameter("witness is too small".into()));
    }
    if block_density(hg, y)? >= *delta {
        return Err(Error::InvalidParameter("witness is not sparse".into()));
    }
    let c = block_density(hg, w)?;
    let two = Rational::from_integer(2.into());
    if delta * &two >= c {
        return Err(Error::Infeasible("delta >= c/2 makes the increment non-positive".into()));
    }
    let bound = &c + (&c - &two * delta) * gamma / (Rational::one() - gamma);
    let floor = delta * gamma / Rational::from_integer(BigInt::one() << h) * Rational::from_integer(pw);
    let mut best: Option<Increment> = None;
    for mask in 0..(1u32 << h) - 1 {
        let pattern: Vec<bool> = (0..h).map(|i| mask >> i & 1 == 1).collect();
        let blocks: Vec<Vec<usize>> = pattern
            .iter()
            .zip(y.iter().zip(w))
            .map(|(&keep, (yi, wi))| if keep { yi.clone() } else { wi.iter().copied().filter(|v| !yi.contains(v)).collect() })
            .collect();
        if blocks.iter().any(Vec::is_empty) || Rational::from_integer(product(&blocks)) < floor {
            continue;
        }
        let density = block_density(hg, &blocks)?;
        if best.as_ref().is_none_or(|b| density > b.density) {
            best = Some(Increment { blocks, density, pattern, bound: bound.clone() });
        }
    }
    match best {
        Some(inc) if inc.density >= inc.bound => Ok(inc),
        _ => Err(Error::Infeasible("no pattern reaches the increment bound".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    /// Exhaustive when small enough, sampled otherwise.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// No witness exists: the tuple is superregular.
    VerifiedExhaustive,
    /// No witness was found within the budget.
    UnfalsifiedSampled,
}

impl Certificate {
    pub fn name(self) -> &'static str {
        match self {
            Certificate::VerifiedExhaustive => "verified-exhaustive",
            Certificate::UnfalsifiedSampled => "unfalsified-sampled",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuperregularOptions {
    pub search: WitnessSearch,
    /// Random witness candidates per iteration.
    pub witness_budget: usize,
    /// Exhaustive search enumerates subsets of all blocks but the largest;
    /// it runs when their total size is at most this.
    pub exhaustive_bits: usize,
}

impl Default for SuperregularOptions {
    fn default() -> Self {
        SuperregularOptions { search: WitnessSearch::Auto, witness_budget: 2000, exhaustive_bits: 16 }
    }
}

#[derive(Clone, Debug)]
pub struct Superregular {
    pub state: DensityState,
    pub status: Certificate,
    /// `(2/gamma) log2(1/d)` for the starting density `d`.
    pub iteration_cap: f64,
}

/// Smallest-density completion: with all blocks but `last` fixed, the best
/// `Y_last` of each size takes the vertices of smallest weight, and the
/// smallest admissible size is best.
struct Completion<'a> {
    hg: &'a Hypergraph,
    owner: Vec<usize>,
    last: usize,
}

impl<'a> Completion<'a> {
    fn new(hg: &'a Hypergraph, w: &[Vec<usize>], last: usize) -> Completion<'a> {
        let mut owner = alloc::vec![usize::MAX; hg.n()];
        for (b, blk) in w.iter().enumerate() {
            for &v in blk {
                owner[v] = b;
            }
        }
        Completion { hg, owner, last }
    }

    /// Best `Y_last` given the other blocks (marked in `chosen`), or `None`
    /// if no size satisfies the product constraint.
    fn complete(&self, w: &[Vec<usize>], chosen: &[bool], others: &BigInt, need_total: &Rational) -> Option<(Vec<usize>, Rational)> {
        let h = w.len();
        let need = (need_total / Rational::from_integer(others.clone())).ceil().to_integer();
        let need = if need < BigInt::one() { 1 } else { usize::try_from(need).ok()? };
        let wl = &w[self.last];
        if need > wl.len() {
            return None;
        }
        let mut weight: BTreeMap<usize, u64> = wl.iter().map(|&v| (v, 0)).collect();
        let mut seen = alloc::vec![false; h];
        'edges: for e in self.hg.edges() {
            seen.iter_mut().for_each(|s| *s = false);
            let mut tail = usize::MAX;
            for &v in e {
                let b = self.owner[v];
                if b == usize::MAX || seen[b] {
                    continue 'edges;
                }
                seen[b] = true;
                if b == self.last {
                    tail = v;
                } else if !chosen[v] {
                    continue 'edges;
                }
            }
            *weight.get_mut(&tail).expect("tail vertex") += 1;
        }
        let mut by_weight: Vec<(u64, usize)> = weight.into_iter().map(|(v, c)| (c, v)).collect();
        by_weight.sort_unstable();
        let pick: Vec<usize> = by_weight[..need].iter().map(|&(_, v)| v).collect();
        let edges: u64 = by_weight[..need].iter().map(|&(c, _)| c).sum();
        let density = Rational::new(BigInt::from(edges), others * BigInt::from(need));
        Some((pick, density))
    }
}

/// Search for `Y_i ⊆ W_i` with product at least `gamma` of the whole and
/// density below `delta`.
fn find_witness<R: Rng>(
    hg: &Hypergraph,
    w: &[Vec<usize>],
    gamma: &Rational,
    delta: &Rational,
    exhaustive: bool,
    budget: usize,
    rng: &mut R,
) -> Option<Vec<Vec<usize>>> {
    let h = w.len();
    let last = (0..h).max_by_key(|&i| (w[i].len(), i)).expect("h >= 1");
    let comp = Completion::new(hg, w, last);
    let need_total = gamma * Rational::from_integer(product(w));
    let mut chosen = alloc::vec![false; hg.n()];
    let front: Vec<usize> = (0..h).filter(|&i| i != last).collect();
    let try_choice = |chosen: &[bool]| -> Option<Vec<Vec<usize>>> {
        let ys: Vec<Vec<usize>> = front.iter().map(|&i| w[i].iter().copied().filter(|&v| chosen[v]).collect()).collect();
        if ys.iter().any(Vec::is_empty) {
            return None;
        }
        let others = product(&ys);
        let (tail, density) = comp.complete(w, chosen, &others, &need_total)?;
        (density < *delta).then(|| {
            let mut out = alloc::vec![Vec::new(); h];
            for (&i, y) in front.iter().zip(ys) {
                out[i] = y;
            }
            out[last] = tail;
            out
        })
    };
    if exhaustive {
        let verts: Vec<usize> = front.iter().flat_map(|&i| w[i].iter().copied()).collect();
        for mask in 0u64..(1u64 << verts.len()) {
            for (j, &v) in verts.iter().enumerate() {
                chosen[v] = mask >> j & 1 == 1;
            }
            if let Some(y) = try_choice(&chosen) {
                return Some(y);
            }
        }
        return None;
    }
    for _ in 0..budget {
        for &i in &front {
            let p: f64 = rng.random_range(0.2..1.0);
            for &v in &w[i] {
                chosen[v] = rng.random_bool(p);
            }
        }
        if let Some(y) = try_choice(&chosen) {
            return Some(y);
        }
    }
    None
}

/// Iterate partite split and density increments until no witness against
/// `(gamma, delta)`-superregularity is found.
pub fn find_superregular<R: Rng>(
    hg: &Hypergraph,
    gamma: &Rational,
    delta: &Rational,
    opts: &SuperregularOptions,
    rng: &mut R,
) -> Result<Superregular> {
    if *gamma <= Rational::zero() || *gamma >= Rational::one() || *delta <= Rational::zero() {
        return Err(Error::InvalidParameter("need 0 < gamma < 1 and delta > 0".into()));
    }
    if measure_density(hg) < delta * Rational::from_integer(8.into()) {
        return Err(Error::Infeasible("hypergraph density is below 8 delta".into()));
    }
    let split = partite_split(hg, rng)?;
    let start = split.density.clone();
    let mut state = DensityState::new(split.blocks, split.density);
    let g = gamma.to_f64_lossy();
    let cap = 2.0 / g * libm::log2(1.0 / start.to_f64_lossy());
    let h = hg.arity();
    let step_floor = delta * gamma / Rational::from_integer(BigInt::one() << h);
    let initial = Rational::from_integer(product(&state.blocks));
    loop {
        let largest = state.blocks.iter().map(Vec::len).max().unwrap_or(0);
        let bits: usize = state.blocks.iter().map(Vec::len).sum::<usize>() - largest;
        let exhaustive = match opts.search {
            WitnessSearch::Exhaustive => true,
            WitnessSearch::Sampled => false,
            WitnessSearch::Auto => bits <= opts.exhaustive_bits,
        };
        if exhaustive && bits > 40 {
            return Err(Error::BudgetExceeded(alloc::format!("exhaustive witness search over {bits} vertices")));
        }
        let Some(y) = find_witness(hg, &state.blocks, gamma, delta, exhaustive, opts.witness_budget, rng) else {
            let status = if exhaustive { Certificate::VerifiedExhaustive } else { Certificate::UnfalsifiedSampled };
            return Ok(Superregular { state, status, iteration_cap: cap });
        };
        let inc = density_increment(hg, &state.blocks, gamma, delta, &y)?;
        state.advance(inc.blocks, inc.density);
        let k = state.iteration as i32;
        assert!(
            Rational::from_integer(product(&state.blocks)) >= pow(&step_floor, k) * &initial,
            "block product fell below the per-step bound"
        );
        if state.iteration as f64 > cap {
            return Err(Error::BudgetExceeded(alloc::format!("{} increments exceed the cap {cap:.2}", state.iteration)));
        }
    }
}

fn pow(r: &Rational, k: i32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for Rational {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `log2` of the cover threshold `beta = h! delta c^h alpha` with
/// `gamma = c^h`, `delta = eps/8` and
/// `alpha = h^-h (delta gamma / 2^h)^((2/gamma) log2(1/delta))`.
pub fn theoretical_cover_beta_log2(h: usize, c: f64, eps: f64) -> f64 {
    let hf = h as f64;
    let delta = eps / 8.0;
    let gamma = libm::pow(c, hf);
    let log_fact: f64 = (1..=h).map(|i| libm::log2(i as f64)).sum();
    let log_alpha = -hf * libm::log2(hf) + 2.0 / gamma * libm::log2(1.0 / delta) * libm::log2(delta * gamma / libm::pow(2.0, hf));
    log_fact + libm::log2(delta) + hf * libm::log2(c) + log_alpha
}

#[derive(Clone, Debug)]
pub struct CoverOptions {
    /// Minimum fraction of all triples a new tuple must cover.
    pub beta: Rational,
    /// Candidate tuples generated per round.
    pub candidates: usize,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions { beta: Rational::new(1.into(), 50.into()), candidates: 60 }
    }
}

#[derive(Clone, Debug)]
pub struct CoverTuple {
    pub sets: [Vec<usize>; 3],
    pub status: Homogeneity,
    /// Previously uncovered triples this tuple covered.
    pub gain: u64,
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    pub tuples: Vec<CoverTuple>,
    pub covered: u64,
    pub total: u64,
    pub covered_density: Rational,
    pub beta: Rational,
}

fn triple_index(n: usize, t: [usize; 3]) -> usize {
    // lexicographic rank of a sorted triple
    let [a, b, c] = t;
    let mut r = 0u64;
    for x in 0..a {
        r += binomial((n - x - 1) as u64, 2);
    }
    for y in a + 1..b {
        r += (n - y - 1) as u64;
    }
    r += (c - b - 1) as u64;
    r as usize
}

/// Greedy cover of the triples of a planar point set by tuples homogeneous
/// with respect to `q`, each covering at least `beta` of all triples.
///
/// Candidate tuples come from triples of radial cones and from random
/// disjoint blocks, shrunk by homogeneous extraction.
pub fn homogeneous_cover<R: Rng>(set: &PointSet, q: &Point, opts: &CoverOptions, rng: &mut R) -> Result<CoverReport> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: 2, found: set.dim() });
    }
    let n = set.len();
    if n < 3 {
        return Err(Error::InvalidParameter("need at least 3 points".into()));
    }
    if opts.beta <= Rational::zero() {
        return Err(Error::InvalidParameter("beta must be positive".into()));
    }
    let total = binomial(n as u64, 3);
    let threshold = &opts.beta * Rational::from_integer(total.into());
    let max_rounds = (Rational::one() / &opts.beta).ceil().to_integer();
    let mut covered_flags = alloc::vec![false; total as usize];
    let mut report = CoverReport { tuples: Vec::new(), covered: 0, total, covered_density: Rational::zero(), beta: opts.beta.clone() };
    let pts = set.points();
    let gain_of = |sets: &[Vec<usize>; 3], flags: &[bool]| -> u64 {
        let mut g = 0;
        for &a in &sets[0] {
            for &b in &sets[1] {
                for &c in &sets[2] {
                    let mut t = [a, b, c];
                    t.sort_unstable();
                    g += u64::from(!flags[triple_index(n, t)]);
                }
            }
        }
        g
    };
    loop {
        if BigInt::from(report.tuples.len()) >= max_rounds {
            break;
        }
        let mut best: Option<(u64, [Vec<usize>; 3], Homogeneity)> = None;
        for attempt in 0..opts.candidates {
            let raw: [Vec<usize>; 3] = if attempt % 2 == 0 {
                let k = rng.random_range(3..=8.min(n));
                let Ok(r) = radial_homogeneous_partition(set, q, k) else { continue };
                let mut ids: Vec<usize> = (0..k).collect();
                ids.shuffle(rng);
                [r.partition.blocks[ids[0]].clone(), r.partition.blocks[ids[1]].clone(), r.partition.blocks[ids[2]].clone()]
            } else {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                let m = rng.random_range(1..=n / 3);
                [perm[..m].to_vec(), perm[m..2 * m].to_vec(), perm[2 * m..3 * m].to_vec()]
            };
            let sets: Vec<Vec<Point>> = raw.iter().map(|b| b.iter().map(|&i| pts[i].clone()).collect()).collect();
            let Ok(e) = extract_homogeneous_subsets(q, &sets) else { continue };
            let kept: [Vec<usize>; 3] = core::array::from_fn(|i| e.subsets[i].iter().map(|&j| raw[i][j]).collect());
            let g = gain_of(&kept, &covered_flags);
            if best.as_ref().is_none_or(|(bg, _, _)| g > *bg) {
                best = Some((g, kept, e.status));
            }
        }
        let Some((g, sets, status)) = best else { break };
        if Rational::from_integer(g.into()) < threshold || g == 0 {
            break;
        }
        for &a in &sets[0] {
            for &b in &sets[1] {
                for &c in &sets[2] {
                    let mut t = [a, b, c];
                    t.sort_unstable();
                    covered_flags[triple_index(n, t)] = true;
                }
            }
        }
        report.covered += g;
        report.tuples.push(CoverTuple { sets, status, gain: g });
    }
    report.covered_density = ratio(report.covered, total);
    Ok(report)
}

/// Refine the cover into parts by membership pattern, then cut every part
/// into pieces of size `n/k` and pool the remainders, giving `k` equal blocks.
pub fn cover_partition(n: usize, cover: &[CoverTuple], k: usize) -> Result<LabeledPartition> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidParameter(alloc::format!("{k} does not divide {n}")));
    }
    let size = n / k;
    let mut parts: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let sig: Vec<u8> = cover
            .iter()
            .map(|t| t.sets.iter().position(|s| s.contains(&v)).map_or(0, |i| i as u8 + 1))
            .collect();
        parts.entry(sig).or_default().push(v);
    }
    let mut blocks = Vec::with_capacity(k);
    let mut pool = Vec::new();
    for part in parts.into_values() {
        let mut chunks = part.chunks_exact(size);
        blocks.extend(chunks.by_ref().map(<[usize]>::to_vec));
        pool.extend_from_slice(chunks.remainder());
    }
    blocks.extend(pool.chunks(size).map(<[usize]>::to_vec));
    LabeledPartition::new(n, blocks, PartitionKind::Equipartition, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hypergraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Hypergraph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if rng.random_bool(p) {
                        edges.push(alloc::vec![a, b, c]);
                    }
                }
            }
        }
        Hypergraph::new(n, 3, edges).unwrap()
    }

    #[test]
    fn complete_split_has_density_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = partite_split(&Hypergraph::complete(6, 3), &mut rng).unwrap();
        assert_eq!(s.density, rat(1, 1));
        assert!(s.blocks.iter().all(|b| b.len() == 2));
    }

    #[test]
    fn single_edge_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = Hypergraph::new(3, 3, alloc::vec![alloc::vec![0, 1, 2]]).unwrap();
        assert_eq!(partite_split(&h, &mut rng).unwrap().density, rat(1, 1));
        let empty = Hypergraph::new(3, 3, Vec::new()).unwrap();
        assert!(partite_split(&empty, &mut rng).is_err());
    }

    #[test]
    fn random_split_meets_half_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let h = random_hypergraph(12, 0.3, &mut rng);
            let s = partite_split(&h, &mut rng).unwrap();
            assert_eq!(s.density, block_density(&h, &s.blocks).unwrap());
            assert!(s.density >= measure_density(&h) / BigInt::from(2));
        }
    }

    #[test]
    fn increment_formula_instance() {
        // blocks {0,1},{2,3}; edges make c = 1/2 with witness Y = {0},{2} of density 0
        let h = Hypergraph::new(4, 2, alloc::vec![alloc::vec![0, 3], alloc::vec![1, 2]]).unwrap();
        let w = [alloc::vec![0, 1], alloc::vec![2, 3]];
        let y = [alloc::vec![0], alloc::vec![2]];
        let inc = density_increment(&h, &w, &rat(1, 4), &rat(1, 8), &y).unwrap();
        assert_eq!(inc.bound, rat(1, 2) + rat(1, 4) * rat(1, 3));
        assert!(inc.density >= inc.bound);
        assert_eq!(inc.density, rat(1, 1));
    }

    #[test]
    fn increment_refuses_degenerate_delta() {
        let h = Hypergraph::new(4, 2, alloc::vec![alloc::vec![0, 3], alloc::vec![1, 2]]).unwrap();
        let w = [alloc::vec![0, 1], alloc::vec![2, 3]];
        let y = [alloc::vec![0], alloc::vec![2]];
        assert!(matches!(density_increment(&h, &w, &rat(1, 4), &rat(1, 3), &y), Err(Error::Infeasible(_))));
        // witness that is not sparse
        let dense = [alloc::vec![0], alloc::vec![3]];
        assert!(density_increment(&h, &w, &rat(1, 4), &rat(1, 8), &dense).is_err());
    }

    #[test]
    fn complete_hypergraph_is_superregular() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = find_superregular(&Hypergraph::complete(9, 3), &rat(1, 2), &rat(1, 16), &Default::default(), &mut rng).unwrap();
        assert_eq!(r.state.iteration, 0);
        assert_eq!(r.status, Certificate::VerifiedExhaustive);
        assert_eq!(r.state.density, rat(1, 1));
    }

    #[test]
    fn exhaustive_and_sampled_agree_on_toy() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (g, d) = (rat(1, 8), rat(1, 32));
        let mut found = 0;
        for _ in 0..20 {
            let h = random_hypergraph(9, 0.5, &mut rng);
            let w = partite_split(&h, &mut rng).unwrap().blocks;
            let ex = find_witness(&h, &w, &g, &d, true, 0, &mut rng);
            let sa = find_witness(&h, &w, &g, &d, false, 2000, &mut rng);
            assert_eq!(ex.is_some(), sa.is_some());
            found += usize::from(ex.is_some());
            let r = find_superregular(&h, &g, &d, &Default::default(), &mut rng).unwrap();
            assert!(r.state.iteration as f64 <= r.iteration_cap);
        }
        assert!(found > 0);
    }

    #[test]
    fn tracked_densities_match_recount() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let h = random_hypergraph(12, 0.5, &mut rng);
        let r = find_superregular(&h, &rat(1, 4), &rat(1, 32), &Default::default(), &mut rng).unwrap();
        assert_eq!(r.state.density, block_density(&h, &r.state.blocks).unwrap());
        for pair in r.state.history.windows(2) {
            assert!(pair[1].1 > pair[0].1);
        }
    }

    #[test]
    fn triple_ranks_are_a_bijection() {
        let n = 7;
        let mut seen = alloc::vec![false; binomial(n as u64, 3) as usize];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let i = triple_index(n, [a, b, c]);
                    assert!(!seen[i]);
                    seen[i] = true;
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn half_plane_cover_is_one_tuple() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Point> = (0..12).map(|i| Point::from_ints(&[i + 1, (i * i) % 7 + 1])).collect();
        let set = PointSet::planar(pts).unwrap();
        let q = Point::from_ints(&[0, 0]);
        let r = homogeneous_cover(&set, &q, &CoverOptions::default(), &mut rng).unwrap();
        assert!(r.tuples.len() <= 50);
        assert!(r.tuples.iter().all(|t| t.status == Homogeneity::None));
        // recount coverage independently
        let mut covered = 0;
        for a in 0..12 {
            for b in a + 1..12 {
                for c in b + 1..12 {
                    let hit = r.tuples.iter().any(|t| {
                        let perms = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
                        perms.iter().any(|p| (0..3).all(|i| t.sets[i].contains(&p[i])))
                    });
                    covered += u64::from(hit);
                }
            }
        }
        assert_eq!(covered, r.covered);
    }

    #[test]
    fn cover_partition_is_balanced() {
        let t = CoverTuple { sets: [alloc::vec![0, 1, 2], alloc::vec![3, 4], alloc::vec![5]], status: Homogeneity::All, gain: 6 };
        let p = cover_partition(12, &[t], 4).unwrap();
        assert_eq!(p.blocks.len(), 4);
        assert!(p.blocks.iter().all(|b| b.len() == 3));
    }

    #[test]
    fn theoretical_beta_is_tiny() {
        assert!(theoretical_cover_beta_log2(3, 1.0 / 64.0, 0.1) < -1000.0);
    }
}
