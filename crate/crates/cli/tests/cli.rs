use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geoverlap::experiments::random_point_set;
use geoverlap::geom::{overlap_value, Embedding, PointSet};
use geoverlap::hypergraph::Hypergraph;
use geoverlap_cli::formats::{hypergraph_json, points_csv, read_hypergraph, read_points};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_geoverlap"));
    c.env_remove("GEOVERLAP_OUT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn write_points(dir: &Path, name: &str, set: &PointSet) -> String {
    let p = dir.join(name);
    std::fs::write(&p, points_csv(set)).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn help_documents_schemas() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for word in ["hypergraph", "partition", "manifest", "Exit codes"] {
        assert!(text.contains(word), "{word}");
    }
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = run(&["depth", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(run(&["depth", "--points", "/nonexistent.csv"]).status.code(), Some(2));
}

#[test]
fn single_triangle_trend() {
    let v = json_of(&run(&["experiment", "ctrend", "--n", "3", "--trials", "1", "--steps", "5"]));
    assert_eq!(v["rows"][0]["upper"], "1");
    assert_eq!(v["rows"][0]["lower"], "1");
}

#[test]
fn overlap_eval_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let set = random_point_set(7, &mut rng);
    let p = write_points(dir.path(), "p.csv", &set);
    let h = Hypergraph::complete(7, 3);
    let hp = dir.path().join("h.json");
    std::fs::write(&hp, hypergraph_json(&h).to_string()).unwrap();
    let v = json_of(&run(&["overlap", "eval", "--hypergraph", hp.to_str().unwrap(), "--points", &p]));
    let want = overlap_value(&h, &Embedding::new(set)).unwrap();
    assert_eq!(v["fraction"], want.fraction.to_string());
    assert_eq!(v["exact"], true);
}

#[test]
fn cones_meet_the_reflection_bound() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = write_points(dir.path(), "p.csv", &random_point_set(363, &mut rng));
    let v = json_of(&run(&["partition", "cones", "--points", &p, "--q", "1/2,1/2", "--k", "121", "--epsilon", "0.1"]));
    assert_eq!(v["within_epsilon"], true);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 121);
}

#[test]
fn construct_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = bin().args(["construct", "neighborhood", "--petersen", "--out", out.to_str().unwrap()]).status().unwrap();
    assert!(status.success());
    let h = read_hypergraph(&out.join("result.json")).unwrap();
    assert_eq!(h.num_edges(), 10);
    assert!(out.join("manifest.json").exists());
}

#[test]
fn sampled_regularity_exits_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let hp = dir.path().join("h.json");
    std::fs::write(&hp, hypergraph_json(&Hypergraph::complete(9, 3)).to_string()).unwrap();
    let out = run(&["regularity", "run", "--hypergraph", hp.to_str().unwrap(), "--search", "sampled"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "unfalsified-sampled");
    let out = run(&["regularity", "run", "--hypergraph", hp.to_str().unwrap(), "--search", "exhaustive"]);
    assert_eq!(json_of(&out)["status"], "verified-exhaustive");
}

#[test]
fn thread_count_does_not_change_results() {
    let g = golden().join("bijection");
    let args = |t: &'static str| {
        let mut a: Vec<String> = ["experiment", "bijection", "--hypergraph", "hypergraph.json", "--points", "points.csv", "--trials", "9"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        a.extend(["--threads".to_string(), t.to_string()]);
        a
    };
    let one = bin().current_dir(&g).args(args("1")).output().unwrap();
    let four = bin().current_dir(&g).args(args("4")).output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn golden_manifests_replay_byte_identically() {
    for name in ["ctrend", "cones", "bijection"] {
        let dir = tempfile::tempdir().unwrap();
        let manifest = golden().join(name).join("manifest.json");
        let out = bin().args(["replay", manifest.to_str().unwrap(), "--into", dir.path().to_str().unwrap()]).output().unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        for entry in std::fs::read_dir(golden().join(name).join("expected")).unwrap() {
            let path = entry.unwrap().path();
            let fresh = std::fs::read(dir.path().join(path.file_name().unwrap())).unwrap();
            assert_eq!(fresh, std::fs::read(&path).unwrap(), "{name}: {}", path.display());
        }
    }
}

#[test]
fn replay_detects_changed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let src = golden().join("cones");
    std::fs::copy(src.join("manifest.json"), dir.path().join("manifest.json")).unwrap();
    let mut set = read_points(&src.join("points.csv")).unwrap().into_points();
    set.swap(0, 1);
    std::fs::write(dir.path().join("points.csv"), points_csv(&PointSet::planar(set).unwrap())).unwrap();
    let out = run(&["replay", dir.path().join("manifest.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
