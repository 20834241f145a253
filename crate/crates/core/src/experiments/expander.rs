use alloc::vec::Vec;

use super::{adversarial_embedding, random_point_set, ExperimentConfig};
use crate::error::{Error, Result};
use crate::geom::overlap::coverage_at;
use crate::geom::{overlap_value, Embedding, OverlapReport, Point, PointSet, Rational};
use crate::hypergraph::neighborhood_triple_hypergraph;
use crate::hypergraph::{Graph, Hypergraph};
use crate::partition::{ceder_partition, SectorPartition};
use crate::spectral::adjacency_spectrum;

/// Terms by which the lower bound falls short of `1/27`, kept apart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeficitTerms {
    pub delta: f64,
    /// `lambda^2 / (delta^2 k^2)`.
    pub spectral: f64,
    /// `1 / k`.
    pub degree: f64,
}

/// One embedding of the neighbourhood hypergraph, analysed around the
/// apex of its six-sector partition.
#[derive(Clone, Debug)]
pub struct ExpanderEmbedding {
    /// `"random"` or `"annealed"`.
    pub source: &'static str,
    pub points: PointSet,
    pub apex: Point,
    pub sector_sizes: [usize; 6],
    /// Vertices with at least `(1 - delta) k / 6` neighbours in every sector.
    pub good_vertices: Vec<usize>,
    /// `n (1 - 36 lambda^2 / (delta^2 k^2))`.
    pub good_bound: f64,
    /// `8 ((1-delta)k/6)^6 / ((1+5 delta)k/6)^3 * |A|`.
    pub triangle_bound: f64,
    /// Hyperedge triangles containing the apex.
    pub apex_covered: u64,
    pub apex_fraction: Rational,
    /// Exact overlap, when the hypergraph is small enough.
    pub overlap: Option<OverlapReport>,
}

#[derive(Clone, Debug)]
pub struct ExpanderReport {
    pub n: usize,
    pub k: usize,
    pub lambda: f64,
    pub delta: f64,
    pub hypergraph: Hypergraph,
    pub deficit: DeficitTerms,
    /// The guaranteed size of the good set is non-positive.
    pub vacuous: bool,
    pub embeddings: Vec<ExpanderEmbedding>,
}

/// Vertices with at least `threshold` neighbours in every sector.
pub fn good_vertices(g: &Graph, sectors: &[Vec<usize>; 6], threshold: f64) -> Vec<usize> {
    let mut sector = alloc::vec![0usize; g.n()];
    for (j, s) in sectors.iter().enumerate() {
        for &v in s {
            sector[v] = j;
        }
    }
    (0..g.n())
        .filter(|&i| {
            let mut c = [0usize; 6];
            for &u in g.neighbors(i) {
                c[sector[u]] += 1;
            }
            c.iter().all(|&x| x as f64 >= threshold)
        })
        .collect()
}

fn analyse(
    g: &Graph,
    h: &Hypergraph,
    points: PointSet,
    source: &'static str,
    k: usize,
    lambda: f64,
    delta: f64,
    exact: bool,
) -> Result<ExpanderEmbedding> {
    let partition: SectorPartition = ceder_partition(&points)?;
    let kf = k as f64;
    let low = (1.0 - delta) * kf / 6.0;
    let high = (1.0 + 5.0 * delta) * kf / 6.0;
    let good = good_vertices(g, &partition.sectors, low);
    let good_bound = g.n() as f64 * (1.0 - 36.0 * lambda * lambda / (delta * delta * kf * kf));
    let triangle_bound = 8.0 * libm::pow(low, 6.0) / libm::pow(high, 3.0) * good.len() as f64;
    let f = Embedding::new(points);
    let apex_covered = coverage_at(h, &f, &partition.apex)?;
    let apex_fraction = Rational::new(apex_covered.into(), (h.num_edges() as u64).max(1).into());
    let overlap = if exact { Some(overlap_value(h, &f)?) } else { None };
    Ok(ExpanderEmbedding {
        source,
        sector_sizes: partition.counts(),
        apex: partition.apex,
        points: f.points().clone(),
        good_vertices: good,
        good_bound,
        triangle_bound,
        apex_covered,
        apex_fraction,
        overlap,
    })
}

/// Runs the expander argument on concrete embeddings of the neighbourhood
/// triple hypergraph of `g`: `cfg.trials` random embeddings, plus an
/// annealed one when `cfg.steps > 0` and the hypergraph has at most
/// `cfg.exact_edge_budget` edges. `cfg.epsilon` plays the role of `delta`.
pub fn expander_overlap_pipeline(g: &Graph, cfg: &ExperimentConfig) -> Result<ExpanderReport> {
    cfg.validate()?;
    let delta = cfg.epsilon;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("delta {delta} not in (0, 1)")));
    }
    let h = neighborhood_triple_hypergraph(g)?;
    let k = g.regular_degree().ok_or(Error::NotRegular)?;
    let lambda = adjacency_spectrum(g)?.lambda;
    let kf = k as f64;
    let spectral = lambda * lambda / (delta * delta * kf * kf);
    let deficit = DeficitTerms { delta, spectral, degree: 1.0 / kf };
    let exact = h.num_edges() <= cfg.exact_edge_budget;
    let mut embeddings = Vec::new();
    if exact && cfg.steps > 0 {
        let a = adversarial_embedding(&h, cfg)?;
        embeddings.push(analyse(g, &h, a.embedding, "annealed", k, lambda, delta, exact)?);
    }
    for t in 0..cfg.trials {
        // stream 0 belongs to the annealer
        let points = random_point_set(g.n(), &mut cfg.rng(1 + t as u64));
        embeddings.push(analyse(g, &h, points, "random", k, lambda, delta, exact)?);
    }
    Ok(ExpanderReport {
        n: g.n(),
        k,
        lambda,
        delta,
        hypergraph: h,
        deficit,
        vacuous: 36.0 * spectral >= 1.0,
        embeddings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_runs_and_is_vacuous() {
        let cfg = ExperimentConfig { trials: 2, steps: 10, ..Default::default() };
        let r = expander_overlap_pipeline(&Graph::petersen(), &cfg).unwrap();
        assert_eq!(r.k, 3);
        assert!((r.lambda - 2.0).abs() < 1e-9);
        assert!(r.vacuous);
        assert_eq!(r.embeddings.len(), 3);
        for e in &r.embeddings {
            assert_eq!(e.sector_sizes.iter().sum::<usize>(), 10);
            assert!(e.good_bound <= 0.0);
            let o = e.overlap.as_ref().unwrap();
            assert!(o.covered >= e.apex_covered);
        }
    }

    #[test]
    fn good_set_recount() {
        let g = Graph::petersen();
        let cfg = ExperimentConfig { trials: 1, steps: 0, ..Default::default() };
        let r = expander_overlap_pipeline(&g, &cfg).unwrap();
        let e = &r.embeddings[0];
        let part = ceder_partition(&e.points).unwrap();
        // a zero threshold keeps every vertex
        assert_eq!(good_vertices(&g, &part.sectors, 0.0).len(), 10);
        // a threshold above one needs two neighbours in each of six sectors
        assert!(good_vertices(&g, &part.sectors, 1.5).is_empty());
    }

    #[test]
    fn rejects_quadrilaterals() {
        let cfg = ExperimentConfig { trials: 1, steps: 0, ..Default::default() };
        let g = Graph::complete(5);
        assert_eq!(expander_overlap_pipeline(&g, &cfg).unwrap_err(), Error::HasQuadrilateral);
    }
}
