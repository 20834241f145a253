use geoverlap::experiments::{random_bijection_batch, random_point_set, ExperimentConfig};
use geoverlap::geom::overlap::coverage_at;
use geoverlap::geom::{deep_point_complete, overlap_value, rat, simplicial_depth, simplicial_depth_brute, Embedding, Point};
use geoverlap::hypergraph::{block_density, crossing_edges, degree_profile, random_regular_hypergraph, Hypergraph};
use geoverlap::partition::{bukh_check, ceder_partition};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hypergraph(n: usize, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if rng.random_bool(0.4) {
                    edges.push(vec![a, b, c]);
                }
            }
        }
    }
    Hypergraph::new(n, 3, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn depth_sweep_matches_brute(seed in any::<u64>(), n in 3usize..14, qx in 0i64..1 << 21, qy in 0i64..1 << 21) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = random_point_set(n, &mut rng);
        let q = Point::xy(rat(2 * qx + 1, 1 << 22), rat(2 * qy + 1, 1 << 22));
        prop_assert_eq!(simplicial_depth(&q, &set).unwrap(), simplicial_depth_brute(&q, &set).unwrap());
        for p in set.points() {
            prop_assert_eq!(simplicial_depth(p, &set).unwrap(), simplicial_depth_brute(p, &set).unwrap());
        }
    }

    #[test]
    fn overlap_witness_attains_the_maximum(seed in any::<u64>(), n in 3usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(n, &mut rng);
        let set = random_point_set(n, &mut rng);
        let f = Embedding::new(set.clone());
        let r = overlap_value(&h, &f).unwrap();
        prop_assert_eq!(r.total, h.num_edges() as u64);
        prop_assert_eq!(coverage_at(&h, &f, &r.witness).unwrap(), r.covered);
        for p in set.points() {
            prop_assert!(coverage_at(&h, &f, p).unwrap() <= r.covered);
        }
    }

    #[test]
    fn bijection_equals_relabelled_edges(seed in any::<u64>(), n in 3usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(n, &mut rng);
        let set = random_point_set(n, &mut rng);
        let mut pi: Vec<usize> = (0..n).collect();
        pi.shuffle(&mut rng);
        let moved = Hypergraph::new(n, 3, h.edges().iter().map(|e| e.iter().map(|&v| pi[v]).collect()).collect()).unwrap();
        let a = overlap_value(&h, &Embedding::from_bijection(&set, &pi).unwrap()).unwrap();
        let b = overlap_value(&moved, &Embedding::new(set)).unwrap();
        prop_assert_eq!(a.covered, b.covered);
    }

    #[test]
    fn complete_overlap_is_the_deep_point(seed in any::<u64>(), n in 3usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = random_point_set(n, &mut rng);
        let a = overlap_value(&Hypergraph::complete(n, 3), &Embedding::new(set.clone())).unwrap();
        prop_assert_eq!(a.covered, deep_point_complete(&set).unwrap().covered);
    }

    #[test]
    fn crossing_density_counts_transversal_edges(seed in any::<u64>(), n in 6usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(n, &mut rng);
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let blocks = vec![vs[..2].to_vec(), vs[2..4].to_vec(), vs[4..].to_vec()];
        let brute = h.edges().iter().filter(|e| {
            let mut hit = [0; 3];
            for v in e.iter() {
                for (i, b) in blocks.iter().enumerate() {
                    hit[i] += b.contains(v) as usize;
                }
            }
            hit == [1, 1, 1]
        }).count() as u64;
        prop_assert_eq!(crossing_edges(&h, &blocks).unwrap(), brute);
        let prod = (4 * (n - 4)) as i64;
        prop_assert_eq!(block_density(&h, &blocks).unwrap(), rat(brute as i64, prod));
    }

    #[test]
    fn regular_hypergraphs_are_regular(seed in any::<u64>(), m in 2usize..12, r in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 3 * m;
        let h = random_regular_hypergraph(n, 3, r, &mut rng, 1000).unwrap();
        prop_assert_eq!(degree_profile(&h).regular_degree(), Some(r));
        prop_assert_eq!(h.num_edges(), n * r / 3);
    }

    #[test]
    fn ceder_sectors_are_balanced(seed in any::<u64>(), n in 6usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = random_point_set(n, &mut rng);
        let part = ceder_partition(&set).unwrap();
        let counts = part.counts();
        prop_assert_eq!(counts.iter().sum::<usize>(), n);
        prop_assert_eq!(part.imbalance, 0);
        for _ in 0..20 {
            let six: Vec<Point> = part.sectors.iter().map(|s| set.points()[s[rng.random_range(0..s.len())]].clone()).collect();
            prop_assert!(bukh_check(&part, &six).unwrap() >= 8);
        }
    }
}

#[test]
fn batches_are_reproducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = random_regular_hypergraph(18, 3, 3, &mut rng, 1000).unwrap();
    let set = random_point_set(18, &mut rng);
    let cfg = ExperimentConfig { seed: 11, trials: 6, ..Default::default() };
    let a = random_bijection_batch(&h, &set, &cfg).unwrap();
    let b = random_bijection_batch(&h, &set, &cfg).unwrap();
    assert_eq!(a.fractions(), b.fractions());
    let other = random_bijection_batch(&h, &set, &ExperimentConfig { seed: 12, ..cfg }).unwrap();
    assert_eq!(other.fractions().len(), 6);
}
