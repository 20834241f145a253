//! Adjacency spectra, the expander mixing inequality, and short-cycle checks.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    /// All eigenvalues, largest first.
    pub eigenvalues: Vec<f64>,
    /// `max |lambda_i|` over `i >= 2`.
    pub lambda: f64,
    /// Regular degree, if the graph is regular.
    pub k: Option<usize>,
    /// Bound on the distance of every computed eigenvalue from the true one.
    pub error_bound: f64,
}

impl SpectralReport {
    /// `lambda <= 2 sqrt(k - 1)` up to the error bound.
    pub fn is_ramanujan(&self) -> bool {
        match self.k {
            Some(k) if k >= 1 => self.lambda <= 2.0 * libm::sqrt((k - 1) as f64) + self.error_bound,
            _ => false,
        }
    }
}

/// Householder reduction of a symmetric matrix (row-major, `n x n`) to
/// tridiagonal form. Returns the diagonal and the subdiagonal (`e[0] = 0`).
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = alloc::vec![0.0; n];
    let mut e = alloc::vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| libm::fabs(a[i * n + k])).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -libm::sqrt(h) } else { libm::sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    (d, e)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with shifts.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                if libm::fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::BudgetExceeded("eigenvalue iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { libm::fabs(r) } else { -libm::fabs(r) });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// Eigenvalues of a dense symmetric matrix, largest first.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>> {
    if matrix.len() != n * n {
        return Err(Error::InvalidParameter("matrix is not n x n".into()));
    }
    let mut a = matrix.to_vec();
    let (d, e) = tridiagonalize(&mut a, n);
    let mut ev = tridiagonal_eigenvalues(d, e)?;
    ev.sort_by(|x, y| y.total_cmp(x));
    Ok(ev)
}

/// Full adjacency spectrum.
///
/// The error bound is the backward-error estimate `16 n eps |A|_F` for
/// Householder reduction followed by QL iteration, which bounds every
/// eigenvalue perturbation by Weyl's inequality.
pub fn adjacency_spectrum(g: &Graph) -> Result<SpectralReport> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let mut a = alloc::vec![0.0; n * n];
    for (u, v) in g.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    let eigenvalues = symmetric_eigenvalues(&a, n)?;
    let frob = libm::sqrt(2.0 * g.num_edges() as f64);
    let error_bound = 16.0 * n as f64 * f64::EPSILON * frob.max(1.0);
    let lambda = eigenvalues[1..].iter().map(|x| libm::fabs(*x)).fold(0.0, f64::max);
    Ok(SpectralReport { eigenvalues, lambda, k: g.regular_degree(), error_bound })
}

/// Outcome of checking `|E(S,T) - k|S||T|/n| <= lambda sqrt(|S||T|)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixingCheck {
    /// Ordered pairs `(i, j)` in `S x T` with `ij` an edge.
    pub e_st: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn verify_mixing(g: &Graph, s: &[usize], t: &[usize]) -> Result<MixingCheck> {
    let spec = adjacency_spectrum(g)?;
    verify_mixing_with(g, &spec, s, t)
}

/// Mixing check against a precomputed spectrum. `holds` allows the
/// certified eigenvalue error, so `false` is a genuine counterexample.
pub fn verify_mixing_with(g: &Graph, spec: &SpectralReport, s: &[usize], t: &[usize]) -> Result<MixingCheck> {
    let k = g.regular_degree().ok_or(Error::NotRegular)?;
    let n = g.n();
    let mut in_t = alloc::vec![false; n];
    for &v in t {
        if v >= n {
            return Err(Error::InvalidParameter(alloc::format!("vertex {v} out of range")));
        }
        in_t[v] = true;
    }
    let mut e_st = 0u64;
    for &u in s {
        if u >= n {
            return Err(Error::InvalidParameter(alloc::format!("vertex {u} out of range")));
        }
        e_st += g.neighbors(u).iter().filter(|&&v| in_t[v]).count() as u64;
    }
    let (ss, ts) = (s.len() as f64, t.len() as f64);
    let lhs = libm::fabs(e_st as f64 - k as f64 * ss * ts / n as f64);
    let root = libm::sqrt(ss * ts);
    let rhs = spec.lambda * root;
    let slack = spec.error_bound * root + 1e-9 * (1.0 + lhs);
    Ok(MixingCheck { e_st, lhs, rhs, holds: lhs <= rhs + slack })
}

/// No two vertices share two or more neighbours.
pub fn is_quadrilateral_free(g: &Graph) -> bool {
    let n = g.n();
    let mut mark = alloc::vec![usize::MAX; n];
    for u in 0..n {
        // every vertex reached by a path u - w - v must be reached once
        for &w in g.neighbors(u) {
            for &v in g.neighbors(w) {
                if v == u {
                    continue;
                }
                if mark[v] == u {
                    return false;
                }
                mark[v] = u;
            }
        }
    }
    true
}

/// Same predicate via the off-diagonal entries of `A^2`.
pub fn is_quadrilateral_free_matrix(g: &Graph) -> bool {
    let n = g.n();
    let mut row = alloc::vec![0u32; n];
    for u in 0..n {
        row.iter_mut().for_each(|r| *r = 0);
        for &w in g.neighbors(u) {
            for &v in g.neighbors(w) {
                row[v] += 1;
            }
        }
        if row.iter().enumerate().any(|(v, &c)| v != u && c >= 2) {
            return false;
        }
    }
    true
}

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = alloc::vec![usize::MAX; n];
    let mut parent = alloc::vec![usize::MAX; n];
    let mut queue = alloc::collections::VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| libm::fabs(x - y) < 1e-9)
    }

    #[test]
    fn complete_graph_spectrum() {
        let r = adjacency_spectrum(&Graph::complete(4)).unwrap();
        assert!(close(&r.eigenvalues, &[3.0, -1.0, -1.0, -1.0]));
        assert!(libm::fabs(r.lambda - 1.0) < 1e-9);
    }

    #[test]
    fn six_cycle_spectrum() {
        let r = adjacency_spectrum(&Graph::cycle(6)).unwrap();
        assert!(close(&r.eigenvalues, &[2.0, 1.0, 1.0, -1.0, -1.0, -2.0]));
        assert!(libm::fabs(r.lambda - 2.0) < 1e-9);
    }

    #[test]
    fn petersen_spectrum() {
        let r = adjacency_spectrum(&Graph::petersen()).unwrap();
        let mut expected = alloc::vec![3.0];
        expected.extend([1.0; 5]);
        expected.extend([-2.0; 4]);
        assert!(close(&r.eigenvalues, &expected));
        assert!(r.error_bound <= 1e-9 * 10.0);
        assert!(r.is_ramanujan());
    }

    #[test]
    fn empty_graph_is_an_error() {
        assert!(adjacency_spectrum(&Graph::new(0, &[]).unwrap()).is_err());
    }

    #[test]
    fn mixing_on_k4() {
        let m = verify_mixing(&Graph::complete(4), &[0, 1], &[2, 3]).unwrap();
        assert_eq!(m.e_st, 4);
        assert!(libm::fabs(m.lhs - 1.0) < 1e-12 && libm::fabs(m.rhs - 2.0) < 1e-9 && m.holds);
        let empty = verify_mixing(&Graph::complete(4), &[], &[2]).unwrap();
        assert!(empty.lhs == 0.0 && empty.rhs == 0.0 && empty.holds);
    }

    #[test]
    fn girth_and_quadrilaterals() {
        let c4 = Graph::cycle(4);
        assert!(!is_quadrilateral_free(&c4) && !is_quadrilateral_free_matrix(&c4));
        assert_eq!(girth(&c4), Some(4));
        let p = Graph::petersen();
        assert!(is_quadrilateral_free(&p) && is_quadrilateral_free_matrix(&p));
        assert_eq!(girth(&p), Some(5));
        let tree = Graph::star(4);
        assert!(is_quadrilateral_free(&tree));
        assert_eq!(girth(&tree), None);
        assert_eq!(girth(&Graph::complete(4)), Some(3));
    }
}
