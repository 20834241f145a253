use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};

/// Simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = alloc::vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(alloc::format!("edge ({u}, {v}) leaves 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(alloc::format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, a) in self.adj.iter().enumerate() {
            for &v in a {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == k).then_some(k)
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle on at least 3 vertices")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("valid complete graph")
    }

    /// The star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::new(k + 1, &edges).expect("valid star")
    }

    /// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::new(10, &edges).expect("valid Petersen graph")
    }

    /// Distance from `src` to every vertex, `usize::MAX` when unreachable.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = alloc::vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Uniform-ish random `k`-regular simple graph with girth at least
    /// `min_girth` (pass 3 for no constraint beyond simplicity).
    ///
    /// Edges are added one at a time between random vertices with spare
    /// degree, rejecting pairs that would close a short cycle; a run that gets
    /// stuck is restarted, up to `max_attempts` runs.
    pub fn random_regular<R: Rng + ?Sized>(
        n: usize,
        k: usize,
        min_girth: usize,
        rng: &mut R,
        max_attempts: usize,
    ) -> Result<Graph> {
        if k >= n || (n * k) % 2 == 1 {
            return Err(Error::Infeasible(alloc::format!("no {k}-regular graph on {n} vertices")));
        }
        for _ in 0..max_attempts {
            if let Some(g) = try_random_regular(n, k, min_girth.max(3), rng) {
                return Ok(g);
            }
        }
        Err(Error::RetryLimit { attempts: max_attempts })
    }
}

fn within_distance(adj: &[Vec<usize>], u: usize, v: usize, limit: usize, mark: &mut [usize], stamp: usize) -> bool {
    // bounded BFS; mark[] holds the stamp of the last search that reached a vertex
    let mut frontier = alloc::vec![u];
    mark[u] = stamp;
    for _ in 0..limit {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in &adj[x] {
                if y == v {
                    return true;
                }
                if mark[y] != stamp {
                    mark[y] = stamp;
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    false
}

/// Replace an edge `xy` by `ux` and `vy` for open vertices `u`, `v` (equal
/// when `u` has two free slots), keeping the cycle constraint.
fn switch_repair<R: Rng + ?Sized>(
    adj: &mut [Vec<usize>],
    open: &[usize],
    k: usize,
    suitable: &mut dyn FnMut(&Vec<Vec<usize>>, usize, usize, &mut [usize]) -> bool,
    rng: &mut R,
) -> bool {
    let n = adj.len();
    let mut mark = alloc::vec![0usize; n];
    let u = open[rng.random_range(0..open.len())];
    let v = if adj[u].len() + 2 <= k && open.len() == 1 {
        u
    } else {
        match open.iter().copied().find(|&w| w != u) {
            Some(w) => w,
            None => return false,
        }
    };
    let mut work: Vec<Vec<usize>> = adj.to_vec();
    for _ in 0..200 * n {
        let x = rng.random_range(0..n);
        if work[x].is_empty() {
            continue;
        }
        let y = work[x][rng.random_range(0..work[x].len())];
        if [x, y].iter().any(|w| *w == u || *w == v) {
            continue;
        }
        work[x].retain(|&w| w != y);
        work[y].retain(|&w| w != x);
        if suitable(&work, u, x, &mut mark) {
            work[u].push(x);
            work[x].push(u);
            if suitable(&work, v, y, &mut mark) {
                work[v].push(y);
                work[y].push(v);
                adj.clone_from_slice(&work);
                return true;
            }
            work[u].pop();
            work[x].pop();
        }
        work[x].push(y);
        work[y].push(x);
    }
    false
}

fn try_random_regular<R: Rng + ?Sized>(n: usize, k: usize, min_girth: usize, rng: &mut R) -> Option<Graph> {
    let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::with_capacity(k); n];
    let mut open: Vec<usize> = (0..n).collect();
    let mut mark = alloc::vec![0usize; n];
    let mut stamp = 0usize;
    let limit = min_girth - 2;
    let mut suitable = |adj: &Vec<Vec<usize>>, u: usize, v: usize, mark: &mut [usize]| {
        if u == v || adj[u].contains(&v) {
            return false;
        }
        stamp += 1;
        !within_distance(adj, u, v, limit, mark, stamp)
    };
    while !open.is_empty() {
        let mut placed = false;
        for _ in 0..(8 * open.len()).max(64) {
            let i = rng.random_range(0..open.len());
            let j = rng.random_range(0..open.len());
            let (u, v) = (open[i], open[j]);
            if suitable(&adj, u, v, &mut mark) {
                adj[u].push(v);
                adj[v].push(u);
                placed = true;
                break;
            }
        }
        if !placed {
            // exhaustive fallback before declaring the run stuck
            let mut found = None;
            'outer: for i in 0..open.len() {
                for j in i + 1..open.len() {
                    if suitable(&adj, open[i], open[j], &mut mark) {
                        found = Some((open[i], open[j]));
                        break 'outer;
                    }
                }
            }
            match found {
                Some((u, v)) => {
                    adj[u].push(v);
                    adj[v].push(u);
                }
                None => {
                    if !switch_repair(&mut adj, &open, k, &mut suitable, rng) {
                        return None;
                    }
                }
            }
        }
        open.retain(|&w| adj[w].len() < k);
    }
    let edges: Vec<(usize, usize)> =
        adj.iter().enumerate().flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v))).collect();
    Graph::new(n, &edges).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn petersen_shape() {
        let g = Graph::petersen();
        assert_eq!(g.num_edges(), 15);
        assert_eq!(g.regular_degree(), Some(3));
    }

    #[test]
    fn rejects_self_loops() {
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(1, 3)]).is_err());
    }

    #[test]
    fn random_regular_respects_degree_and_girth() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Graph::random_regular(50, 3, 3, &mut rng, 100).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        let g = Graph::random_regular(120, 4, 5, &mut rng, 100).unwrap();
        assert_eq!(g.regular_degree(), Some(4));
        assert!(crate::spectral::girth(&g).is_none_or(|c| c >= 5));
    }

    #[test]
    fn infeasible_regular_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(Graph::random_regular(5, 3, 3, &mut rng, 10), Err(Error::Infeasible(_))));
    }
}
