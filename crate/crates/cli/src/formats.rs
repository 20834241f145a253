//! Readers and writers for the on-disk formats.
//!
//! Points: CSV with header `x,y[,z...]`, or JSON `{"d":2,"points":[["1/2","3"],...]}`.
//! Hypergraphs: JSON `{"n":N,"arity":K,"edges":[[v,...],...],"provenance":{...}}`.
//! Graphs: JSON `{"n":N,"edges":[[u,v],...]}`.
//! Partitions: JSON `{"kind":"cones","apex":["0","0"],"blocks":[[i,...],...]}`.
//! Exact values are always strings of the form `p/q` or `p`.

use std::path::Path;
use std::str::FromStr;

use geoverlap::geom::{OverlapReport, Point, PointSet, Rational};
use geoverlap::hypergraph::{Graph, Hypergraph, Provenance};
use geoverlap::partition::{LabeledPartition, PartitionKind};
use geoverlap::regularity::DensityState;
use geoverlap::spectral::SpectralReport;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125`, exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if s.contains('/') || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole = BigInt::from_str(&format!("{int}{frac}")).ok()?;
        return Some(Rational::new(whole, BigInt::from(10).pow(frac.len() as u32)));
    }
    Rational::from_str(s).ok()
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn point(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(rational).collect())
}

/// Parses a comma-separated point such as `0,1/2`.
pub fn parse_point(s: &str) -> Option<Point> {
    let coords: Option<Vec<Rational>> = s.split(',').map(parse_rational).collect();
    coords.filter(|c| !c.is_empty()).map(Point::new)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::format(path, e.to_string()))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    let bad = |m: String| CliError::format(path, m);
    let (dim, points) = if is_json(path) {
        let v = read_json(path)?;
        let d = v["d"].as_u64().ok_or_else(|| bad("missing \"d\"".into()))? as usize;
        let rows = v["points"].as_array().ok_or_else(|| bad("missing \"points\"".into()))?;
        let mut pts = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let coords: Option<Vec<Rational>> = row
                .as_array()
                .map(|a| a.iter().map(|c| c.as_str().and_then(parse_rational)).collect())
                .unwrap_or(None);
            pts.push(Point::new(coords.ok_or_else(|| bad(format!("point {i}: coordinates must be rational strings")))?));
        }
        (d, pts)
    } else {
        let text = read_text(path)?;
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
        let d = header.split(',').count();
        if !header.split(',').map(str::trim).enumerate().all(|(i, f)| f == axis(i)) {
            return Err(bad(format!("expected header like x,y; got {header:?}")));
        }
        let mut pts = Vec::new();
        for (i, line) in lines.enumerate() {
            let p = parse_point(line).ok_or_else(|| bad(format!("row {}: bad coordinates {line:?}", i + 1)))?;
            pts.push(p);
        }
        (d, pts)
    };
    Ok(PointSet::new(dim, points)?)
}

fn axis(i: usize) -> String {
    ["x", "y", "z", "w"].get(i).map_or_else(|| format!("x{i}"), |s| s.to_string())
}

pub fn points_csv(set: &PointSet) -> String {
    let mut out = (0..set.dim()).map(axis).collect::<Vec<_>>().join(",");
    out.push('\n');
    for p in set.points() {
        out.push_str(&p.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

pub fn points_json(set: &PointSet) -> Value {
    json!({"d": set.dim(), "points": set.points().iter().map(point).collect::<Vec<_>>()})
}

fn index_lists(v: &Value, what: &str, path: &Path) -> Result<Vec<Vec<usize>>> {
    let bad = || CliError::format(path, format!("\"{what}\" must be a list of index lists"));
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|e| e.as_array().ok_or_else(bad)?.iter().map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad)).collect())
        .collect()
}

pub fn hypergraph_json(h: &Hypergraph) -> Value {
    let mut prov = Map::new();
    prov.insert("tag".into(), Value::String(h.provenance().tag.clone()));
    for (k, v) in &h.provenance().params {
        prov.insert(k.clone(), Value::String(v.clone()));
    }
    json!({"n": h.n(), "arity": h.arity(), "edges": h.edges(), "provenance": prov})
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let v = read_json(path)?;
    let n = v["n"].as_u64().ok_or_else(|| CliError::format(path, "missing \"n\""))? as usize;
    let arity = v["arity"].as_u64().ok_or_else(|| CliError::format(path, "missing \"arity\""))? as usize;
    let edges = index_lists(&v["edges"], "edges", path)?;
    let mut h = Hypergraph::new(n, arity, edges)?;
    if let Some(p) = v["provenance"].as_object() {
        let mut prov = Provenance::new(p.get("tag").and_then(Value::as_str).unwrap_or(""));
        for (k, val) in p.iter().filter(|(k, _)| *k != "tag") {
            prov = prov.param(k, val.as_str().map_or_else(|| val.to_string(), str::to_string));
        }
        h = h.with_provenance(prov);
    }
    Ok(h)
}

pub fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(u, v)| [u, v]).collect();
    json!({"n": g.n(), "edges": edges})
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let v = read_json(path)?;
    let n = v["n"].as_u64().ok_or_else(|| CliError::format(path, "missing \"n\""))? as usize;
    let edges = index_lists(&v["edges"], "edges", path)?;
    let pairs = edges
        .iter()
        .map(|e| match e[..] {
            [u, w] => Ok((u, w)),
            _ => Err(CliError::format(path, "graph edges have two endpoints")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Graph::new(n, &pairs)?)
}

pub fn partition_json(p: &LabeledPartition) -> Value {
    json!({"kind": p.kind.name(), "apex": p.apex.as_ref().map(point), "blocks": p.blocks})
}

pub fn read_partition(path: &Path, n: usize) -> Result<LabeledPartition> {
    let v = read_json(path)?;
    let kind = match v["kind"].as_str() {
        Some("equipartition") => PartitionKind::Equipartition,
        Some("cones") => PartitionKind::Cones,
        Some("generic") | None => PartitionKind::Generic,
        Some(k) => return Err(CliError::format(path, format!("unknown partition kind {k:?}"))),
    };
    let apex = match &v["apex"] {
        Value::Null => None,
        Value::Array(a) => {
            let c: Option<Vec<Rational>> = a.iter().map(|c| c.as_str().and_then(parse_rational)).collect();
            Some(Point::new(c.ok_or_else(|| CliError::format(path, "apex coordinates must be rational strings"))?))
        }
        _ => return Err(CliError::format(path, "apex must be a list or null")),
    };
    let blocks = index_lists(&v["blocks"], "blocks", path)?;
    Ok(LabeledPartition::new(n, blocks, kind, apex)?)
}

pub fn overlap_json(r: &OverlapReport) -> Value {
    json!({
        "fraction": rational(&r.fraction),
        "covered": r.covered,
        "total": r.total,
        "witness": point(&r.witness),
        "method": r.method.name(),
        "exact": r.method.is_exact(),
        "candidates": r.candidates,
        "coincident": r.coincident,
    })
}

/// Shortest decimal that round-trips the float.
pub fn decimal(x: f64) -> Value {
    Value::String(format!("{x:?}"))
}

pub fn spectral_json(s: &SpectralReport) -> Value {
    json!({
        "eigenvalues": s.eigenvalues.iter().map(|&x| decimal(x)).collect::<Vec<_>>(),
        "lambda": decimal(s.lambda),
        "k": s.k,
        "error_bound": decimal(s.error_bound),
        "ramanujan": s.is_ramanujan(),
    })
}

/// `iteration,sizes,density` with sizes joined by `;`.
pub fn density_csv(state: &DensityState) -> String {
    let mut out = String::from("iteration,sizes,density\n");
    for (i, (sizes, d)) in state.history.iter().enumerate() {
        let sizes: Vec<String> = sizes.iter().map(ToString::to_string).collect();
        out.push_str(&format!("{i},{},{d}\n", sizes.join(";")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use geoverlap::geom::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-3"), Some(rat(-3, 1)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_point("0,1/3"), Some(Point::xy(rat(0, 1), rat(1, 3))));
    }

    #[test]
    fn points_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let set = PointSet::planar(vec![Point::xy(rat(1, 2), rat(3, 1)), Point::xy(rat(-7, 3), rat(0, 1))]).unwrap();
        let csv = dir.path().join("p.csv");
        std::fs::write(&csv, points_csv(&set)).unwrap();
        assert_eq!(read_points(&csv).unwrap().points(), set.points());
        let js = dir.path().join("p.json");
        std::fs::write(&js, points_json(&set).to_string()).unwrap();
        assert_eq!(read_points(&js).unwrap().points(), set.points());
    }

    #[test]
    fn hypergraph_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let h = Hypergraph::complete(5, 3).with_provenance(Provenance::new("complete").param("n", 5));
        let path = dir.path().join("h.json");
        std::fs::write(&path, hypergraph_json(&h).to_string()).unwrap();
        assert_eq!(read_hypergraph(&path).unwrap(), h);
    }

    #[test]
    fn bad_header_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_points(&path), Err(CliError::Format { .. })));
    }
}
