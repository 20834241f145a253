use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Graph, Hypergraph, Provenance};
use crate::error::{Error, Result};

/// A permutation of `0..m` stored by images: `i -> p[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = alloc::vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidParameter(alloc::format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(m: usize) -> Permutation {
        Permutation((0..m).collect())
    }

    /// The cycle `i -> i + s mod m`.
    pub fn shift(m: usize, s: usize) -> Permutation {
        Permutation((0..m).map(|i| (i + s) % m).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self * other`, acting as `other` first: `i -> self[other[i]]`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// A finite permutation group, listed in lexicographic order of images.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    elements: Vec<Permutation>,
    index: BTreeMap<Permutation, usize>,
}

impl PermutationGroup {
    /// Closure of `generators` under composition; refuses groups larger than `limit`.
    pub fn generate(generators: &[Permutation], limit: usize) -> Result<PermutationGroup> {
        let m = generators.first().map_or(0, Permutation::degree);
        if generators.iter().any(|g| g.degree() != m) {
            return Err(Error::InvalidParameter("generators act on different sets".into()));
        }
        let mut found = BTreeSet::new();
        let id = Permutation::identity(m);
        found.insert(id.clone());
        let mut frontier = alloc::vec![id];
        while let Some(g) = frontier.pop() {
            for s in generators {
                let h = s.compose(&g);
                if found.insert(h.clone()) {
                    if found.len() > limit {
                        return Err(Error::BudgetExceeded(alloc::format!("group has more than {limit} elements")));
                    }
                    frontier.push(h);
                }
            }
        }
        let elements: Vec<Permutation> = found.into_iter().collect();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(PermutationGroup { elements, index })
    }

    /// `Z_n` acting on itself by shifts.
    pub fn cyclic(n: usize) -> PermutationGroup {
        PermutationGroup::generate(&[Permutation::shift(n, 1 % n.max(1))], n.max(1)).expect("cyclic group")
    }

    /// `S_m` generated by a transposition and an `m`-cycle.
    pub fn symmetric(m: usize) -> PermutationGroup {
        let mut swap: Vec<usize> = (0..m).collect();
        if m >= 2 {
            swap.swap(0, 1);
        }
        let gens = [Permutation(swap), Permutation::shift(m, 1 % m.max(1))];
        let order = (1..=m).product();
        PermutationGroup::generate(&gens, order).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }
}

fn connection_set(group: &PermutationGroup, s: &[Permutation]) -> Result<Vec<Permutation>> {
    let set: BTreeSet<Permutation> = s.iter().cloned().collect();
    for g in &set {
        if group.index_of(g).is_none() {
            return Err(Error::InvalidParameter(alloc::format!("{:?} is not a group element", g.images())));
        }
        if g.is_identity() {
            return Err(Error::InvalidParameter("identity in connection set".into()));
        }
        if !set.contains(&g.inverse()) {
            return Err(Error::NotSymmetric);
        }
    }
    Ok(set.into_iter().collect())
}

/// Cayley graph on the group elements: `g ~ h` iff `g h^-1` lies in `s`.
pub fn cayley_graph(group: &PermutationGroup, s: &[Permutation]) -> Result<Graph> {
    let s = connection_set(group, s)?;
    let mut edges = Vec::new();
    for (hi, h) in group.elements().iter().enumerate() {
        for x in &s {
            let g = x.compose(h);
            let gi = group.index_of(&g).expect("group is closed");
            if hi < gi {
                edges.push((hi, gi));
            }
        }
    }
    Graph::new(group.order(), &edges)
}

/// All `r`-cliques of the Cayley graph, as an `r`-uniform hypergraph.
pub fn cayley_clique_hypergraph(group: &PermutationGroup, s: &[Permutation], r: usize) -> Result<Hypergraph> {
    if r < 2 {
        return Err(Error::InvalidParameter(alloc::format!("clique size {r} < 2")));
    }
    let g = cayley_graph(group, s)?;
    let mut edges = Vec::new();
    let mut clique = Vec::with_capacity(r);
    for v in 0..g.n() {
        let cand: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        clique.push(v);
        extend_cliques(&g, r, &mut clique, &cand, &mut edges);
        clique.pop();
    }
    Ok(Hypergraph::new(g.n(), r, edges)?.with_provenance(
        Provenance::new("cayley").param("order", group.order()).param("generators", s.len()).param("r", r),
    ))
}

fn extend_cliques(g: &Graph, r: usize, clique: &mut Vec<usize>, cand: &[usize], out: &mut Vec<Vec<usize>>) {
    if clique.len() == r {
        out.push(clique.clone());
        return;
    }
    for (i, &v) in cand.iter().enumerate() {
        let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&u| g.has_edge(v, u)).collect();
        clique.push(v);
        extend_cliques(g, r, clique, &next, out);
        clique.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::degree_profile;

    fn shifts(n: usize, s: &[usize]) -> Vec<Permutation> {
        s.iter().map(|&k| Permutation::shift(n, k)).collect()
    }

    #[test]
    fn cycle_has_no_triangles() {
        let z6 = PermutationGroup::cyclic(6);
        let h = cayley_clique_hypergraph(&z6, &shifts(6, &[1, 5]), 3).unwrap();
        assert_eq!(h.num_edges(), 0);
    }

    #[test]
    fn z5_with_all_shifts_is_complete() {
        let z5 = PermutationGroup::cyclic(5);
        let h = cayley_clique_hypergraph(&z5, &shifts(5, &[1, 2, 3, 4]), 3).unwrap();
        assert_eq!(h.num_edges(), 10);
    }

    #[test]
    fn connection_set_errors() {
        let z6 = PermutationGroup::cyclic(6);
        assert_eq!(cayley_clique_hypergraph(&z6, &shifts(6, &[1]), 3).unwrap_err(), Error::NotSymmetric);
        assert!(cayley_clique_hypergraph(&z6, &shifts(6, &[0, 1, 5]), 3).is_err());
        assert!(cayley_clique_hypergraph(&z6, &shifts(6, &[1, 5]), 1).is_err());
    }

    #[test]
    fn symmetric_group_order() {
        assert_eq!(PermutationGroup::symmetric(4).order(), 24);
        assert_eq!(PermutationGroup::symmetric(1).order(), 1);
    }

    #[test]
    fn cayley_hypergraph_is_vertex_transitive() {
        let s4 = PermutationGroup::symmetric(4);
        let conn: Vec<Permutation> = s4
            .elements()
            .iter()
            .filter(|p| matches!(p.images().iter().enumerate().filter(|&(i, &x)| i != x).count(), 2 | 3))
            .cloned()
            .collect();
        let h = cayley_clique_hypergraph(&s4, &conn, 3).unwrap();
        assert!(h.num_edges() > 0);
        assert!(degree_profile(&h).is_regular());
    }
}
