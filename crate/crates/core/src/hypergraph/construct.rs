use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{block_density, edge_density, Graph, Hypergraph, Provenance};
use crate::error::{Error, Result};
use crate::geom::{binomial, next_combination};
use num_traits::ToPrimitive;

/// `t` partitions of `0..n`, each into `n / b` parts of size `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionFamily {
    pub n: usize,
    pub b: usize,
    /// `partitions[i][j]` is the sorted `j`-th part of partition `i`.
    pub partitions: Vec<Vec<Vec<usize>>>,
    /// Number of samples drawn before the pairwise-intersection property held.
    pub attempts: usize,
}

impl PartitionFamily {
    pub fn t(&self) -> usize {
        self.partitions.len()
    }

    /// Any two parts from different partitions share at most two elements.
    pub fn has_small_intersections(&self) -> bool {
        let n = self.n;
        let owners: Vec<Vec<usize>> = self
            .partitions
            .iter()
            .map(|parts| {
                let mut owner = alloc::vec![0usize; n];
                for (j, part) in parts.iter().enumerate() {
                    for &v in part {
                        owner[v] = j;
                    }
                }
                owner
            })
            .collect();
        let mut counts = alloc::vec![0usize; n / self.b.max(1) + 1];
        for (i, parts) in self.partitions.iter().enumerate() {
            for owner in &owners[i + 1..] {
                for part in parts {
                    for &v in part {
                        counts[owner[v]] += 1;
                    }
                    let bad = part.iter().any(|&v| counts[owner[v]] > 2);
                    for &v in part {
                        counts[owner[v]] = 0;
                    }
                    if bad {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All `arity`-subsets lying inside a single part of some partition.
    pub fn hypergraph(&self, arity: usize) -> Result<Hypergraph> {
        let mut edges = Vec::new();
        for parts in &self.partitions {
            for part in parts {
                if part.len() < arity {
                    continue;
                }
                let mut idx: Vec<usize> = (0..arity).collect();
                loop {
                    edges.push(idx.iter().map(|&i| part[i]).collect());
                    if !next_combination(&mut idx, part.len()) {
                        break;
                    }
                }
            }
        }
        Ok(Hypergraph::new(self.n, arity, edges)?.with_provenance(
            Provenance::new("partition")
                .param("n", self.n)
                .param("b", self.b)
                .param("t", self.t())
                .param("arity", arity),
        ))
    }
}

/// The parameters a proof-grade partition family would need for a target `delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionParameters {
    pub b: f64,
    pub beta: f64,
    pub r: f64,
    pub t: f64,
}

/// `b = delta^-3`, `beta = 2 exp(-2 delta^2 b)`, `r = 4 b / beta^2`, `t = r / delta`.
pub fn theoretical_partition_parameters(delta: f64) -> PartitionParameters {
    let b = 1.0 / (delta * delta * delta);
    let beta = 2.0 * libm::exp(-2.0 * delta * delta * b);
    let r = 4.0 * b / (beta * beta);
    PartitionParameters { b, beta, r, t: r / delta }
}

/// Sample `t` independent uniform partitions of `0..n` into parts of size `b`,
/// resampling the whole family until no two parts from different partitions
/// share three or more elements.
pub fn random_partition_family<R: Rng + ?Sized>(
    n: usize,
    b: usize,
    t: usize,
    rng: &mut R,
    max_attempts: usize,
) -> Result<PartitionFamily> {
    if b == 0 || !n.is_multiple_of(b) {
        return Err(Error::InvalidParameter(alloc::format!("part size {b} must divide n = {n}")));
    }
    for attempt in 1..=max_attempts {
        let partitions = (0..t)
            .map(|_| {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                perm.chunks(b)
                    .map(|c| {
                        let mut part = c.to_vec();
                        part.sort_unstable();
                        part
                    })
                    .collect()
            })
            .collect();
        let family = PartitionFamily { n, b, partitions, attempts: attempt };
        if family.has_small_intersections() {
            return Ok(family);
        }
    }
    Err(Error::RetryLimit { attempts: max_attempts })
}

/// Number of partitions in which at least `beta n / b` parts hold at least
/// `(|S|/n + delta) b` elements of `S`, with `beta = 2 exp(-2 delta^2 b)`.
pub fn concentration_audit(family: &PartitionFamily, subset: &[usize], delta: f64) -> usize {
    let n = family.n;
    let b = family.b as f64;
    let mut in_s = alloc::vec![false; n];
    for &v in subset {
        in_s[v] = true;
    }
    let s = in_s.iter().filter(|&&x| x).count() as f64;
    let part_threshold = (s / n as f64 + delta) * b;
    let beta = 2.0 * libm::exp(-2.0 * delta * delta * b);
    let count_threshold = beta * n as f64 / b;
    family
        .partitions
        .iter()
        .filter(|parts| {
            let heavy = parts
                .iter()
                .filter(|part| part.iter().filter(|&&v| in_s[v]).count() as f64 >= part_threshold)
                .count();
            heavy as f64 >= count_threshold
        })
        .count()
}

/// Triples inside a common neighbourhood of a regular quadrilateral-free graph.
pub fn neighborhood_triple_hypergraph(g: &Graph) -> Result<Hypergraph> {
    let k = g.regular_degree().ok_or(Error::NotRegular)?;
    if !crate::spectral::is_quadrilateral_free(g) {
        return Err(Error::HasQuadrilateral);
    }
    let mut edges = Vec::new();
    for r in 0..g.n() {
        let nb = g.neighbors(r);
        for a in 0..nb.len() {
            for b in a + 1..nb.len() {
                for c in b + 1..nb.len() {
                    edges.push(alloc::vec![nb[a], nb[b], nb[c]]);
                }
            }
        }
    }
    let raw = edges.len();
    let h = Hypergraph::new(g.n(), 3, edges)?
        .with_provenance(Provenance::new("neighborhood").param("n", g.n()).param("k", k));
    let expected_edges = binomial(k as u64, 3) as usize * g.n();
    if raw != h.num_edges() || h.num_edges() != expected_edges {
        return Err(Error::InvalidHypergraph(alloc::format!(
            "expected {expected_edges} distinct triples, found {}",
            h.num_edges()
        )));
    }
    let degree = k * binomial(k as u64 - 1, 2) as usize;
    if g.n() > 0 && super::degree_profile(&h).regular_degree() != Some(degree) {
        return Err(Error::InvalidHypergraph(alloc::format!("expected a {degree}-regular hypergraph")));
    }
    Ok(h)
}

/// Vertex sets of walks `j_1 ... j_{d+1}` along edges of `g` with all vertices distinct.
pub fn walk_hypergraph(g: &Graph, d: usize) -> Result<Hypergraph> {
    if d == 0 {
        return Err(Error::InvalidParameter("walk length must be positive".into()));
    }
    let mut edges = Vec::new();
    let mut walk = Vec::with_capacity(d + 1);
    for start in 0..g.n() {
        walk.clear();
        walk.push(start);
        extend_walks(g, d, &mut walk, &mut edges);
    }
    let k = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    Ok(Hypergraph::new(g.n(), d + 1, edges)?
        .with_provenance(Provenance::new("walk").param("n", g.n()).param("k", k).param("d", d)))
}

fn extend_walks(g: &Graph, d: usize, walk: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if walk.len() == d + 1 {
        // each path is found from both ends; keep one orientation
        if walk[0] < walk[d] {
            out.push(walk.clone());
        }
        return;
    }
    let last = *walk.last().expect("walk is non-empty");
    for &next in g.neighbors(last) {
        if !walk.contains(&next) {
            walk.push(next);
            extend_walks(g, d, walk, out);
            walk.pop();
        }
    }
}

/// Random simple `r`-regular `arity`-uniform hypergraph.
///
/// The configuration model (shuffle `r` copies of every vertex, cut into
/// consecutive groups) is tried first, rejecting samples with a repeated
/// vertex inside an edge or a repeated edge. After `max_attempts` rejections
/// the sampler falls back to random sequential edge placement with restarts,
/// which is close to, but not exactly, uniform.
pub fn random_regular_hypergraph<R: Rng + ?Sized>(
    n: usize,
    arity: usize,
    r: usize,
    rng: &mut R,
    max_attempts: usize,
) -> Result<Hypergraph> {
    if arity == 0 || !(n * r).is_multiple_of(arity) {
        return Err(Error::Infeasible(alloc::format!("arity {arity} does not divide r n = {}", n * r)));
    }
    if n < arity || r as u64 > binomial(n as u64 - 1, arity as u64 - 1) {
        return Err(Error::Infeasible(alloc::format!(
            "no simple {r}-regular {arity}-uniform hypergraph on {n} vertices"
        )));
    }
    let provenance = || {
        Provenance::new("regular").param("n", n).param("arity", arity).param("r", r)
    };
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, r)).collect();
    for _ in 0..max_attempts {
        stubs.shuffle(rng);
        let mut edges: Vec<Vec<usize>> = stubs
            .chunks(arity)
            .map(|c| {
                let mut e = c.to_vec();
                e.sort_unstable();
                e
            })
            .collect();
        if edges.iter().any(|e| e.windows(2).any(|w| w[0] == w[1])) {
            continue;
        }
        let m = edges.len();
        edges.sort_unstable();
        edges.dedup();
        if edges.len() == m {
            return Ok(Hypergraph::new(n, arity, edges)?.with_provenance(provenance().param("sampler", "configuration")));
        }
    }
    for _ in 0..max_attempts {
        if let Some(edges) = sequential_regular(n, arity, r, rng) {
            return Ok(Hypergraph::new(n, arity, edges)?.with_provenance(provenance().param("sampler", "sequential")));
        }
    }
    Err(Error::RetryLimit { attempts: 2 * max_attempts })
}

fn sequential_regular<R: Rng + ?Sized>(n: usize, arity: usize, r: usize, rng: &mut R) -> Option<Vec<Vec<usize>>> {
    let mut degree = alloc::vec![0usize; n];
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut present = alloc::collections::BTreeSet::new();
    let target = n * r / arity;
    let mut stalls = 0;
    while edges.len() < target {
        let mut open: Vec<usize> = (0..n).filter(|&v| degree[v] < r).collect();
        if open.len() < arity {
            return None;
        }
        open.shuffle(rng);
        let mut e = open[..arity].to_vec();
        e.sort_unstable();
        if present.contains(&e) {
            stalls += 1;
            if stalls > 64 * target {
                return None;
            }
            continue;
        }
        for &v in &e {
            degree[v] += 1;
        }
        present.insert(e.clone());
        edges.push(e);
    }
    Some(edges)
}

/// Outcome of sampling block tuples and comparing their density to the
/// global edge density.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityRatioAudit {
    pub samples: usize,
    /// Samples with `|rho(V_1..V_h) / rho(H) - 1| > epsilon / 4`.
    pub violations: usize,
    pub max_deviation: f64,
    pub ratios: Vec<f64>,
}

impl DensityRatioAudit {
    pub fn violation_rate(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.violations as f64 / self.samples as f64
        }
    }
}

/// Sample `samples` tuples of disjoint blocks, each of size at least
/// `ceil(n / parts)`, and record `rho(V_1..V_h) / rho(H)`.
pub fn density_ratio_audit<R: Rng + ?Sized>(
    h: &Hypergraph,
    parts: usize,
    epsilon: f64,
    samples: usize,
    rng: &mut R,
) -> Result<DensityRatioAudit> {
    let arity = h.arity();
    let n = h.n();
    let min = n.div_ceil(parts.max(1)).max(1);
    let max = n / arity;
    if min > max {
        return Err(Error::InvalidParameter(alloc::format!(
            "blocks of size {min} do not fit {arity} times into {n} vertices"
        )));
    }
    let rho = edge_density(h).to_f64().unwrap_or(0.0);
    if rho == 0.0 {
        return Err(Error::InvalidParameter("hypergraph has no edges".into()));
    }
    let mut ratios = Vec::with_capacity(samples);
    let mut violations = 0;
    let mut max_deviation: f64 = 0.0;
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        perm.shuffle(rng);
        let mut offset = 0;
        let blocks: Vec<Vec<usize>> = (0..arity)
            .map(|_| {
                let size = rng.random_range(min..=max);
                let block = perm[offset..offset + size].to_vec();
                offset += size;
                block
            })
            .collect();
        let ratio = block_density(h, &blocks)?.to_f64().unwrap_or(0.0) / rho;
        let deviation = libm::fabs(ratio - 1.0);
        max_deviation = max_deviation.max(deviation);
        if deviation > epsilon / 4.0 {
            violations += 1;
        }
        ratios.push(ratio);
    }
    Ok(DensityRatioAudit { samples, violations, max_deviation, ratios })
}
