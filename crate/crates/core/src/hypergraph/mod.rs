//! Uniform hypergraphs, graphs, and the bounded-degree constructions built
//! on them.

mod cayley;
mod construct;
mod graph;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::geom::{binomial, Rational};

pub use cayley::{cayley_clique_hypergraph, cayley_graph, Permutation, PermutationGroup};
pub use construct::{
    concentration_audit, density_ratio_audit, neighborhood_triple_hypergraph, random_partition_family,
    random_regular_hypergraph, theoretical_partition_parameters, walk_hypergraph, DensityRatioAudit,
    PartitionFamily, PartitionParameters,
};
pub use graph::Graph;

/// Construction tag plus the parameters that produced a hypergraph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub tag: String,
    pub params: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(tag: &str) -> Provenance {
        Provenance { tag: tag.to_string(), params: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Provenance {
        self.params.push((key.to_string(), value.to_string()));
        self
    }
}

/// A simple `arity`-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted, and the edge list itself is sorted and free of
/// duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    arity: usize,
    edges: Vec<Vec<usize>>,
    provenance: Provenance,
}

impl Hypergraph {
    /// Validates every edge and collapses duplicates.
    pub fn new(n: usize, arity: usize, edges: Vec<Vec<usize>>) -> Result<Hypergraph> {
        if arity == 0 {
            return Err(Error::InvalidHypergraph("arity must be positive".into()));
        }
        let mut edges = edges;
        for e in edges.iter_mut() {
            if e.len() != arity {
                return Err(Error::InvalidHypergraph(alloc::format!(
                    "edge {e:?} has {} vertices, expected {arity}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(alloc::format!("edge {e:?} repeats a vertex")));
            }
            if e.last().is_some_and(|&v| v >= n) {
                return Err(Error::InvalidHypergraph(alloc::format!("edge {e:?} leaves 0..{n}")));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, arity, edges, provenance: Provenance::new("explicit") })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Hypergraph {
        self.provenance = provenance;
        self
    }

    /// All `arity`-subsets of `0..n`.
    pub fn complete(n: usize, arity: usize) -> Hypergraph {
        let mut edges = Vec::new();
        if arity >= 1 && n >= arity {
            let mut idx: Vec<usize> = (0..arity).collect();
            loop {
                edges.push(idx.clone());
                if !crate::geom::next_combination(&mut idx, n) {
                    break;
                }
            }
        }
        Hypergraph {
            n,
            arity,
            edges,
            provenance: Provenance::new("complete").param("n", n).param("arity", arity),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    /// Relabel vertices by `map` (vertex `v` becomes `map[v]`).
    pub fn relabel(&self, map: &[usize]) -> Result<Hypergraph> {
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| map[v]).collect()).collect();
        Ok(Hypergraph::new(self.n, self.arity, edges)?.with_provenance(self.provenance.clone()))
    }
}

/// Per-vertex degrees with summary statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min: usize,
    pub max: usize,
}

impl DegreeProfile {
    /// The common degree when every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        (self.min == self.max).then_some(self.min)
    }

    pub fn is_regular(&self) -> bool {
        self.min == self.max
    }
}

pub fn degree_profile(h: &Hypergraph) -> DegreeProfile {
    let mut degrees = alloc::vec![0usize; h.n];
    for e in &h.edges {
        for &v in e {
            degrees[v] += 1;
        }
    }
    let min = degrees.iter().copied().min().unwrap_or(0);
    let max = degrees.iter().copied().max().unwrap_or(0);
    DegreeProfile { degrees, min, max }
}

/// `|E| / C(n, arity)`.
pub fn edge_density(h: &Hypergraph) -> Rational {
    let total = binomial(h.n as u64, h.arity as u64);
    if total == 0 {
        return BigRational::from_integer(0.into());
    }
    BigRational::new(BigInt::from(h.edges.len()), BigInt::from(total))
}

/// Number of edges with exactly one vertex in each block.
pub fn crossing_edges(h: &Hypergraph, blocks: &[Vec<usize>]) -> Result<u64> {
    if blocks.len() != h.arity {
        return Err(Error::InvalidParameter(alloc::format!(
            "need {} blocks, got {}",
            h.arity,
            blocks.len()
        )));
    }
    let mut owner = alloc::vec![usize::MAX; h.n];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidParameter("empty block".into()));
        }
        for &v in block {
            if v >= h.n {
                return Err(Error::InvalidParameter(alloc::format!("vertex {v} out of range")));
            }
            if owner[v] != usize::MAX {
                return Err(Error::InvalidParameter("blocks are not disjoint".into()));
            }
            owner[v] = b;
        }
    }
    let mut seen = alloc::vec![false; h.arity];
    let mut count = 0;
    'edges: for e in &h.edges {
        seen.iter_mut().for_each(|s| *s = false);
        for &v in e {
            let b = owner[v];
            if b == usize::MAX || seen[b] {
                continue 'edges;
            }
            seen[b] = true;
        }
        count += 1;
    }
    Ok(count)
}

/// Edges meeting each block exactly once, divided by the product of block sizes.
pub fn block_density(h: &Hypergraph, blocks: &[Vec<usize>]) -> Result<Rational> {
    let count = crossing_edges(h, blocks)?;
    let product: BigInt = blocks.iter().map(|b| BigInt::from(b.len())).product();
    Ok(BigRational::new(BigInt::from(count), product))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    #[test]
    fn duplicates_collapse_and_edges_sort() {
        let h = Hypergraph::new(4, 3, alloc::vec![alloc::vec![2, 1, 0], alloc::vec![0, 1, 2], alloc::vec![3, 1, 0]]).unwrap();
        assert_eq!(h.edges(), &[alloc::vec![0, 1, 2], alloc::vec![0, 1, 3]]);
    }

    #[test]
    fn invalid_edges_are_rejected() {
        assert!(Hypergraph::new(3, 3, alloc::vec![alloc::vec![0, 0, 1]]).is_err());
        assert!(Hypergraph::new(3, 3, alloc::vec![alloc::vec![0, 1, 3]]).is_err());
        assert!(Hypergraph::new(3, 3, alloc::vec![alloc::vec![0, 1]]).is_err());
    }

    #[test]
    fn degree_examples() {
        let single = Hypergraph::new(3, 3, alloc::vec![alloc::vec![0, 1, 2]]).unwrap();
        assert_eq!(degree_profile(&single).regular_degree(), Some(1));
        let k4 = Hypergraph::complete(4, 3);
        assert_eq!(k4.num_edges(), 4);
        assert_eq!(degree_profile(&k4).regular_degree(), Some(3));
    }

    #[test]
    fn density_examples() {
        assert_eq!(edge_density(&Hypergraph::complete(7, 3)), rat(1, 1));
        assert_eq!(edge_density(&Hypergraph::new(7, 3, alloc::vec![]).unwrap()), rat(0, 1));
        // one vertex from each of the pairs {0,1}, {2,3}, {4,5}
        let mut edges = alloc::vec![];
        for a in 0..2 {
            for b in 2..4 {
                for c in 4..6 {
                    edges.push(alloc::vec![a, b, c]);
                }
            }
        }
        let h = Hypergraph::new(6, 3, edges).unwrap();
        let blocks = [alloc::vec![0, 1], alloc::vec![2, 3], alloc::vec![4, 5]];
        assert_eq!(block_density(&h, &blocks).unwrap(), rat(1, 1));
        assert_eq!(edge_density(&h), rat(8, 20));
    }

    #[test]
    fn block_density_errors() {
        let h = Hypergraph::complete(6, 3);
        assert!(block_density(&h, &[alloc::vec![0], alloc::vec![], alloc::vec![1]]).is_err());
        assert!(block_density(&h, &[alloc::vec![0], alloc::vec![0], alloc::vec![1]]).is_err());
    }
}
