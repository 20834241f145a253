use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use geoverlap::experiments::{
    adversarial_embedding, azuma_deviation_bound, c_complete_trend, expander_overlap_pipeline, random_bijection_overlap,
    random_point_set, BijectionBatch, ExperimentConfig,
};
use geoverlap::geom::{
    deep_point_complete, overlap_value_with, simplicial_depth, simplicial_depth_brute, Embedding, Method,
    OverlapOptions, Point, PointSet, Rational,
};
use geoverlap::hypergraph::{
    cayley_clique_hypergraph, degree_profile, neighborhood_triple_hypergraph, random_partition_family,
    random_regular_hypergraph, walk_hypergraph, Graph, Hypergraph, Permutation, PermutationGroup,
};
use geoverlap::partition::{
    ceder_partition, extract_homogeneous_subsets, homogeneity_audit, radial_homogeneous_partition, HomogeneityOptions,
    LabeledPartition, PartitionKind,
};
use geoverlap::regularity::{find_superregular, Certificate, SuperregularOptions, WitnessSearch};
use geoverlap::spectral::adjacency_spectrum;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::formats::{self, decimal, overlap_json, parse_point, parse_rational, partition_json, point, rational};
use crate::{svg, Context, Outcome};

const SCHEMAS: &str = "\
File formats:
  points       CSV with header x,y[,z...]; values are integers, p/q, or finite decimals.
               JSON {\"d\":2,\"points\":[[\"1/2\",\"3\"],...]}.
  hypergraph   JSON {\"n\":N,\"arity\":K,\"edges\":[[v,...],...],\"provenance\":{\"tag\":...}}.
  graph        JSON {\"n\":N,\"edges\":[[u,v],...]}.
  partition    JSON {\"kind\":\"cones\",\"apex\":[\"0\",\"0\"],\"blocks\":[[i,...],...]}.
  manifest     JSON {\"command\",\"params\",\"seed\",\"inputs\",\"version\",\"wall_clock_ms\",\"outputs\"};
               inputs and outputs are lists of {\"path\",\"sha256\"}.
Exact values in JSON output are strings \"p/q\"; floats are marked by their field names.
With --out DIR the result goes to DIR/result.<format> with DIR/manifest.json;
GEOVERLAP_OUT sets the default DIR.

Exit codes: 0 success, 2 invalid input or usage, 3 budget exhausted or an
unknown/unfalsified outcome, 1 replay mismatch.";

#[derive(Parser, Debug)]
#[command(name = "geoverlap", version, about = "Overlap numbers of geometric hypergraphs", after_long_help = SCHEMAS)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args, Debug)]
pub struct Global {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output directory; results are printed when absent.
    #[arg(long, global = true, env = "GEOVERLAP_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Dimension (hyperedges have d+1 vertices) or walk length.
    #[arg(long, global = true, default_value_t = 2)]
    pub d: usize,
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Worker threads for independent trials.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build hypergraphs.
    #[command(subcommand)]
    Construct(Construct),
    /// Evaluate overlap of an embedded hypergraph.
    #[command(subcommand)]
    Overlap(OverlapCmd),
    /// Simplicial depth of a point, or the deepest point of a planar set.
    Depth(DepthArgs),
    /// Sector and cone partitions, extraction and homogeneity audits.
    #[command(subcommand)]
    Partition(PartitionCmd),
    /// Adjacency spectrum of a graph.
    Spectral(GraphSource),
    /// Density increments towards a superregular block tuple.
    #[command(subcommand)]
    Regularity(RegularityCmd),
    /// Randomized overlap experiments.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Re-run a manifest and compare output digests.
    Replay(ReplayArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphSource {
    /// Graph JSON file.
    #[arg(long, conflicts_with_all = ["petersen", "random_n"])]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub petersen: bool,
    /// Random k-regular graph on this many vertices (degree from --k).
    #[arg(long)]
    pub random_n: Option<usize>,
    /// Minimum girth of the random graph.
    #[arg(long, default_value_t = 5)]
    pub girth: usize,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Parts of random partitions into blocks of size b, as (d+1)-subsets.
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        t: usize,
    },
    /// Triples inside common neighbourhoods of a quadrilateral-free graph.
    Neighborhood(GraphSource),
    /// Walks of length d as (d+1)-sets.
    Walk(GraphSource),
    /// r-cliques of a Cayley graph.
    Cayley {
        /// Cyclic group of this order; generators from --shifts.
        #[arg(long, conflicts_with = "perms")]
        cyclic: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        shifts: Vec<usize>,
        /// Permutation generators as images, e.g. "1,0,2;0,2,1"; also the connection set.
        #[arg(long)]
        perms: Option<String>,
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
    /// Random k-regular (d+1)-uniform hypergraph.
    Regular {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Grid,
    MonteCarlo,
}

#[derive(Subcommand, Debug)]
pub enum OverlapCmd {
    /// Largest number of edge simplices sharing a point.
    Eval {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
}

#[derive(Args, Debug)]
pub struct DepthArgs {
    #[arg(long)]
    pub points: PathBuf,
    /// Query point such as 0,1/2; without it the deepest point is found.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Use the cubic enumeration instead of the sweep.
    #[arg(long)]
    pub brute: bool,
}

#[derive(Subcommand, Debug)]
pub enum PartitionCmd {
    /// Six sectors from three concurrent lines.
    Ceder {
        #[arg(long)]
        points: PathBuf,
    },
    /// k angular cones around q, with the reflection audit.
    Cones {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Also test every block triple exactly.
        #[arg(long)]
        audit: bool,
    },
    /// Homogeneous subsets of three point sets.
    Extract {
        #[arg(long, num_args = 3, required = true)]
        sets: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Homogeneity of every block tuple of a partition.
    Audit {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Defaults to the partition's apex.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchArg {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Subcommand, Debug)]
pub enum RegularityCmd {
    /// Density increments until no superregularity witness is found.
    Run {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long, default_value = "1/8")]
        gamma: String,
        #[arg(long, default_value = "1/32")]
        delta: String,
        #[arg(long, value_enum, default_value = "auto")]
        search: SearchArg,
        #[arg(long, default_value_t = 2000)]
        witness_budget: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AnnealArgs {
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.05)]
    pub temperature: f64,
    #[arg(long, default_value_t = 0.98)]
    pub cooling: f64,
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCmd {
    /// Overlap under random bijections onto a fixed point set.
    Bijection {
        #[arg(long)]
        hypergraph: PathBuf,
        /// Point set; a random one of matching size when absent.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Search for an embedding with small overlap.
    Anneal {
        #[arg(long)]
        hypergraph: PathBuf,
        #[command(flatten)]
        anneal: AnnealArgs,
    },
    /// Upper estimates of c(K_n^3) for each n.
    Ctrend {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[command(flatten)]
        anneal: AnnealArgs,
    },
    /// The expander argument on embeddings of a neighbourhood hypergraph.
    Expander {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        anneal: AnnealArgs,
        #[arg(long, default_value_t = 2000)]
        exact_edge_budget: usize,
    },
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    #[arg(long = "into")]
    pub out: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need_k(g: &Global) -> Result<usize> {
    g.k.ok_or_else(|| usage("--k is required"))
}

fn q_point(s: &str) -> Result<Point> {
    parse_point(s).ok_or_else(|| usage(format!("bad point {s:?}; expected e.g. 0,1/2")))
}

fn rational_arg(s: &str, name: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| usage(format!("--{name} {s:?} is not a rational")))
}

fn points(ctx: &Context, p: &Path) -> Result<PointSet> {
    formats::read_points(&ctx.input(p)?)
}

fn hypergraph(ctx: &Context, p: &Path) -> Result<Hypergraph> {
    formats::read_hypergraph(&ctx.input(p)?)
}

fn graph(ctx: &Context, g: &Global, s: &GraphSource) -> Result<Graph> {
    if let Some(p) = &s.graph {
        return formats::read_graph(&ctx.input(p)?);
    }
    if s.petersen {
        return Ok(Graph::petersen());
    }
    if let Some(n) = s.random_n {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        return Ok(Graph::random_regular(n, need_k(g)?, s.girth, &mut rng, 1000)?);
    }
    Err(usage("give --graph FILE, --petersen, or --random-n N"))
}

fn config(g: &Global, a: Option<&AnnealArgs>) -> ExperimentConfig {
    let mut cfg = ExperimentConfig { seed: g.seed, trials: g.trials, ..Default::default() };
    if let Some(e) = g.epsilon {
        cfg.epsilon = e;
    }
    if let Some(a) = a {
        cfg.steps = a.steps;
        cfg.initial_temperature = a.temperature;
        cfg.cooling = a.cooling;
    }
    cfg
}

fn config_json(cfg: &ExperimentConfig) -> Value {
    json!({
        "seed": cfg.seed,
        "trials": cfg.trials,
        "initial_temperature": cfg.initial_temperature,
        "cooling": cfg.cooling,
        "steps": cfg.steps,
        "samples": cfg.samples,
        "exact_edge_budget": cfg.exact_edge_budget,
        "epsilon": cfg.epsilon,
    })
}

fn hypergraph_outcome(h: &Hypergraph) -> Outcome {
    let mut v = formats::hypergraph_json(h);
    let profile = degree_profile(h);
    v["degree"] = json!({"min": profile.min, "max": profile.max, "regular": profile.regular_degree()});
    Outcome::json(v)
}

pub fn dispatch(cli: &Cli, ctx: &Context) -> Result<Outcome> {
    let g = &cli.global;
    if g.threads == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    match &cli.command {
        Command::Construct(c) => construct(ctx, g, c),
        Command::Overlap(OverlapCmd::Eval { hypergraph: hp, points: pp, method, samples, grid }) => {
            let h = hypergraph(ctx, hp)?;
            let set = points(ctx, pp)?;
            let opts = OverlapOptions {
                method: method.map(|m| match m {
                    MethodArg::Exact => Method::ExactArrangement,
                    MethodArg::Grid => Method::Grid,
                    MethodArg::MonteCarlo => Method::MonteCarlo,
                }),
                samples: *samples,
                grid: *grid,
                seed: g.seed,
            };
            let f = Embedding::new(set.clone());
            let r = overlap_value_with(&h, &f, &opts)?;
            let svg = (set.dim() == 2).then(|| svg::blocks(&set, &[], Some((&r.witness, "witness")), "overlap"));
            Ok(Outcome { json: overlap_json(&r), csv: None, svg, unknown: false })
        }
        Command::Depth(a) => depth(ctx, a),
        Command::Partition(p) => partition(ctx, g, p),
        Command::Spectral(s) => {
            let gr = graph(ctx, g, s)?;
            Ok(Outcome::json(formats::spectral_json(&adjacency_spectrum(&gr)?)))
        }
        Command::Regularity(RegularityCmd::Run { hypergraph: hp, gamma, delta, search, witness_budget }) => {
            let h = hypergraph(ctx, hp)?;
            let gamma = rational_arg(gamma, "gamma")?;
            let delta = rational_arg(delta, "delta")?;
            let opts = SuperregularOptions {
                search: match search {
                    SearchArg::Auto => WitnessSearch::Auto,
                    SearchArg::Exhaustive => WitnessSearch::Exhaustive,
                    SearchArg::Sampled => WitnessSearch::Sampled,
                },
                witness_budget: *witness_budget,
                ..Default::default()
            };
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let r = find_superregular(&h, &gamma, &delta, &opts, &mut rng)?;
            let history: Vec<Value> = r.state.history.iter().map(|(s, d)| json!({"sizes": s, "density": rational(d)})).collect();
            let json = json!({
                "status": r.status.name(),
                "iterations": r.state.iteration,
                "iteration_cap": r.iteration_cap,
                "density": rational(&r.state.density),
                "blocks": r.state.blocks,
                "history": history,
            });
            Ok(Outcome {
                json,
                csv: Some(formats::density_csv(&r.state)),
                svg: None,
                unknown: r.status == Certificate::UnfalsifiedSampled,
            })
        }
        Command::Experiment(e) => experiment(ctx, g, e),
        Command::Replay(_) => unreachable!("handled by execute"),
    }
}

fn construct(ctx: &Context, g: &Global, c: &Construct) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let h = match c {
        Construct::Partition { n, b, t } => random_partition_family(*n, *b, *t, &mut rng, 1000)?.hypergraph(g.d + 1)?,
        Construct::Neighborhood(s) => neighborhood_triple_hypergraph(&graph(ctx, g, s)?)?,
        Construct::Walk(s) => walk_hypergraph(&graph(ctx, g, s)?, g.d)?,
        Construct::Cayley { cyclic, shifts, perms, r } => {
            let (group, gens) = match (cyclic, perms) {
                (Some(m), None) => (PermutationGroup::cyclic(*m), shifts.iter().map(|&s| Permutation::shift(*m, s % m.max(&1))).collect::<Vec<_>>()),
                (None, Some(p)) => {
                    let gens = p
                        .split(';')
                        .map(|s| {
                            let images: std::result::Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse()).collect();
                            Permutation::new(images.map_err(|_| usage(format!("bad permutation {s:?}")))?).map_err(CliError::from)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (PermutationGroup::generate(&gens, 1 << 20)?, gens)
                }
                _ => return Err(usage("give either --cyclic N with --shifts, or --perms")),
            };
            cayley_clique_hypergraph(&group, &gens, *r)?
        }
        Construct::Regular { n } => random_regular_hypergraph(*n, g.d + 1, need_k(g)?, &mut rng, 1000)?,
    };
    Ok(hypergraph_outcome(&h))
}

fn depth(ctx: &Context, a: &DepthArgs) -> Result<Outcome> {
    let set = points(ctx, &a.points)?;
    match &a.q {
        Some(q) => {
            let q = q_point(q)?;
            let d = if a.brute { simplicial_depth_brute(&q, &set)? } else { simplicial_depth(&q, &set)? };
            let fraction = Rational::new(d.count.into(), d.total.max(1).into());
            let json = json!({"q": point(&q), "count": d.count, "total": d.total, "fraction": rational(&fraction), "coincident": d.coincident});
            let svg = svg::blocks(&set, &[], Some((&q, "q")), "depth");
            Ok(Outcome { json, csv: None, svg: Some(svg), unknown: false })
        }
        None => {
            let r = deep_point_complete(&set)?;
            let svg = svg::blocks(&set, &[], Some((&r.witness, "deep point")), "deepest point");
            Ok(Outcome { json: overlap_json(&r), csv: None, svg: Some(svg), unknown: false })
        }
    }
}

fn partition(ctx: &Context, g: &Global, p: &PartitionCmd) -> Result<Outcome> {
    match p {
        PartitionCmd::Ceder { points: pp } => {
            let set = points(ctx, pp)?;
            let s = ceder_partition(&set)?;
            let labeled = LabeledPartition::new(set.len(), s.sectors.to_vec(), PartitionKind::Generic, Some(s.apex.clone()))?;
            let mut json = partition_json(&labeled);
            json["directions"] = json!(s.directions);
            json["counts"] = json!(s.counts());
            json["imbalance"] = json!(s.imbalance);
            let mut c = svg::Canvas::fit(&[set.points(), std::slice::from_ref(&s.apex)].concat());
            for (i, d) in s.directions.iter().enumerate() {
                c.line(&s.apex, [d[0] as f64, d[1] as f64], svg::color(i + 3));
            }
            for (i, b) in s.sectors.iter().enumerate() {
                for &v in b {
                    c.dot(&set.points()[v], 3.0, svg::color(i));
                }
            }
            c.mark(&s.apex, "apex");
            Ok(Outcome { json, csv: None, svg: Some(c.finish("ceder partition")), unknown: false })
        }
        PartitionCmd::Cones { points: pp, q, audit } => {
            let set = points(ctx, pp)?;
            let q = q_point(q)?;
            let r = radial_homogeneous_partition(&set, &q, need_k(g)?)?;
            let mut json = partition_json(&r.partition);
            json["reflection_triples"] = json!(r.reflection_triples);
            json["bound"] = json!(r.bound);
            json["fraction"] = rational(&r.fraction);
            json["fraction_float"] = decimal(num_f64(&r.fraction));
            if let Some(eps) = g.epsilon {
                json["within_epsilon"] = json!(num_f64(&r.fraction) <= eps);
            }
            let mut unknown = false;
            if *audit {
                let a = homogeneity_audit(&set, &r.partition, &q, &HomogeneityOptions::default())?;
                unknown = a.unknown > 0;
                json["audit"] = audit_json(&a);
            }
            let svg = svg::blocks(&set, &r.partition.blocks, Some((&q, "q")), "radial cones");
            Ok(Outcome { json, csv: None, svg: Some(svg), unknown })
        }
        PartitionCmd::Extract { sets, q } => {
            let q = q_point(q)?;
            let sets = sets.iter().map(|p| points(ctx, p).map(PointSet::into_points)).collect::<Result<Vec<_>>>()?;
            let e = extract_homogeneous_subsets(&q, &sets)?;
            let json = json!({
                "subsets": e.subsets,
                "status": e.status.name(),
                "steps": e.steps,
                "guaranteed_min": e.guaranteed_min,
                "meets_size": e.meets_size,
            });
            Ok(Outcome::json(json))
        }
        PartitionCmd::Audit { points: pp, partition: part, q } => {
            let set = points(ctx, pp)?;
            let labeled = formats::read_partition(&ctx.input(part)?, set.len())?;
            let q = match (q, &labeled.apex) {
                (Some(q), _) => q_point(q)?,
                (None, Some(a)) => a.clone(),
                (None, None) => return Err(usage("the partition has no apex; give --q")),
            };
            let a = homogeneity_audit(&set, &labeled, &q, &HomogeneityOptions::default())?;
            Ok(Outcome { json: audit_json(&a), csv: None, svg: None, unknown: a.unknown > 0 })
        }
    }
}

fn audit_json(a: &geoverlap::partition::HomogeneityAudit) -> Value {
    json!({
        "tuples": a.tuples,
        "homogeneous": a.homogeneous,
        "non_homogeneous": a.non_homogeneous,
        "unknown": a.unknown,
        "fraction": rational(&a.fraction),
    })
}

fn num_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Runs `trials` bijection trials on up to `threads` workers; trial `t`
/// always uses stream `t`, so the split does not change the results.
fn bijection_batch(h: &Hypergraph, set: &PointSet, cfg: &ExperimentConfig, threads: usize) -> Result<BijectionBatch> {
    cfg.validate()?;
    let ids: Vec<usize> = (0..cfg.trials).collect();
    let chunk = cfg.trials.div_ceil(threads.max(1));
    let results: Vec<Result<Vec<_>>> = std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .chunks(chunk)
            .map(|part| {
                // the set caches its general-position check, so each worker owns a copy
                let set = set.clone();
                s.spawn(move || {
                    part.iter()
                        .map(|&t| random_bijection_overlap(h, &set, &mut cfg.rng(t as u64)).map_err(CliError::from))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut trials = Vec::with_capacity(cfg.trials);
    for r in results {
        trials.extend(r?);
    }
    Ok(BijectionBatch { trials })
}

fn experiment(ctx: &Context, g: &Global, e: &ExperimentCmd) -> Result<Outcome> {
    match e {
        ExperimentCmd::Bijection { hypergraph: hp, points: pp } => {
            let h = hypergraph(ctx, hp)?;
            let cfg = config(g, None);
            let set = match pp {
                Some(p) => points(ctx, p)?,
                None => random_point_set(h.n(), &mut cfg.rng(u64::MAX)),
            };
            let batch = bijection_batch(&h, &set, &cfg, g.threads)?;
            let deep = deep_point_complete(&set)?;
            let profile = degree_profile(&h);
            let lambdas = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
            let azuma: Vec<Value> = lambdas
                .iter()
                .map(|&l| {
                    let b = azuma_deviation_bound(h.arity(), profile.max, h.n(), l);
                    json!({"lambda": l, "deviation": b.deviation, "probability": b.probability})
                })
                .collect();
            let q95 = batch.quantile(0.95);
            let json = json!({
                "config": config_json(&cfg),
                "points": formats::points_json(&set),
                "deep_point_fraction": rational(&deep.fraction),
                "fractions": batch.fractions().iter().map(rational).collect::<Vec<_>>(),
                "mean": rational(&batch.mean()),
                "median": rational(&batch.quantile(0.5)),
                "q95": rational(&q95),
                "max": rational(&batch.quantile(1.0)),
                "azuma": azuma,
            });
            let mut csv = String::from("trial,fraction,fraction_float\n");
            for (i, f) in batch.fractions().iter().enumerate() {
                csv.push_str(&format!("{i},{f},{:?}\n", num_f64(f)));
            }
            Ok(Outcome { json, csv: Some(csv), svg: None, unknown: false })
        }
        ExperimentCmd::Anneal { hypergraph: hp, anneal } => {
            let h = hypergraph(ctx, hp)?;
            let cfg = config(g, Some(anneal));
            let r = adversarial_embedding(&h, &cfg)?;
            let json = json!({
                "config": config_json(&cfg),
                "upper_bound": rational(&r.report.fraction),
                "report": overlap_json(&r.report),
                "witness": formats::points_json(&r.embedding),
                "accepted": r.accepted,
                "trace": r.trace.iter().map(rational).collect::<Vec<_>>(),
            });
            let svg = svg::blocks(&r.embedding, &[], Some((&r.report.witness, "deep point")), "annealed embedding");
            Ok(Outcome { json, csv: None, svg: Some(svg), unknown: false })
        }
        ExperimentCmd::Ctrend { n, anneal } => {
            let cfg = config(g, Some(anneal));
            let rows = c_complete_trend(n, &cfg)?;
            let json = json!({
                "config": config_json(&cfg),
                "rows": rows.iter().map(|r| json!({
                    "n": r.n,
                    "upper": rational(&r.upper),
                    "upper_float": num_f64(&r.upper),
                    "upper_method": r.upper_method,
                    "lower": r.lower.as_ref().map(rational),
                    "lower_method": r.lower_method,
                    "witness": formats::points_json(&r.witness),
                    "witness_point": point(&r.witness_point),
                })).collect::<Vec<_>>(),
            });
            let mut csv = String::from("n,upper,upper_float,upper_method,lower\n");
            for r in &rows {
                let lower = r.lower.as_ref().map(ToString::to_string).unwrap_or_default();
                csv.push_str(&format!("{},{},{:?},{},{lower}\n", r.n, r.upper, num_f64(&r.upper), r.upper_method));
            }
            let last = rows.last().expect("at least one n");
            let svg = svg::blocks(&last.witness, &[], Some((&last.witness_point, "deep point")), "complete hypergraph witness");
            Ok(Outcome { json, csv: Some(csv), svg: Some(svg), unknown: false })
        }
        ExperimentCmd::Expander { source, anneal, exact_edge_budget } => {
            let gr = graph(ctx, g, source)?;
            let mut cfg = config(g, Some(anneal));
            cfg.exact_edge_budget = *exact_edge_budget;
            let r = expander_overlap_pipeline(&gr, &cfg)?;
            let embeddings: Vec<Value> = r
                .embeddings
                .iter()
                .map(|e| {
                    json!({
                        "source": e.source,
                        "apex": point(&e.apex),
                        "sector_sizes": e.sector_sizes,
                        "good_vertices": e.good_vertices.len(),
                        "good_bound": e.good_bound,
                        "triangle_bound": e.triangle_bound,
                        "apex_covered": e.apex_covered,
                        "apex_fraction": rational(&e.apex_fraction),
                        "overlap": e.overlap.as_ref().map(overlap_json),
                    })
                })
                .collect();
            let json = json!({
                "config": config_json(&cfg),
                "n": r.n,
                "k": r.k,
                "lambda": r.lambda,
                "delta": r.delta,
                "edges": r.hypergraph.num_edges(),
                "deficit": {"delta": r.deficit.delta, "spectral": r.deficit.spectral, "degree": r.deficit.degree},
                "vacuous": r.vacuous,
                "embeddings": embeddings,
            });
            let mut csv = String::from("source,good_vertices,good_bound,triangle_bound,apex_covered,apex_fraction\n");
            for e in &r.embeddings {
                csv.push_str(&format!(
                    "{},{},{:?},{:?},{},{}\n",
                    e.source,
                    e.good_vertices.len(),
                    e.good_bound,
                    e.triangle_bound,
                    e.apex_covered,
                    e.apex_fraction
                ));
            }
            Ok(Outcome { json, csv: Some(csv), svg: None, unknown: false })
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn command_definitions_are_consistent() {
        super::Cli::command().debug_assert();
    }
}
