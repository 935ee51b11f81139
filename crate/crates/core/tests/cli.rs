use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ecsbm::fixtures::PlantedPartition;
use ecsbm::graph::{induced_subgraph, is_connected, Graph};
use ecsbm::io::{load_input, write_clustering, write_edges};
use ecsbm::pipeline::sample_plain_sbm;

fn ecsbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecsbm"))
        .env_remove("ECSBM_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Toy {
    _dir: tempfile::TempDir,
    root: PathBuf,
    edges: PathBuf,
    clusters: PathBuf,
}

/// Triangle 1-2-3 plus the pendant edge 3-4; 4 is an outlier.
fn toy() -> Toy {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_path_buf();
    let edges = root.join("toy.edges.tsv");
    let clusters = root.join("toy.clustering.tsv");
    fs::write(&edges, "# toy\n1\t2\n2\t3\n1\t3\n3\t4\n").unwrap();
    fs::write(&clusters, "1\tA\n2\tA\n3\tA\n").unwrap();
    Toy {
        _dir: dir,
        root,
        edges,
        clusters,
    }
}

fn generate(t: &Toy, prefix: &str, extra: &[&str]) -> PathBuf {
    let p = t.root.join(prefix);
    let mut args = vec![
        "generate",
        "--network",
        s(&t.edges),
        "--clustering",
        s(&t.clusters),
        "--seed",
        "42",
        "--out-prefix",
        s(&p),
    ];
    args.extend_from_slice(extra);
    let out = ecsbm(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn read(prefix: &Path, suffix: &str) -> String {
    fs::read_to_string(format!("{}{suffix}", prefix.display())).unwrap()
}

#[test]
fn generate_is_reproducible() {
    let t = toy();
    let a = generate(&t, "a", &[]);
    let b = generate(&t, "b", &[]);
    for suffix in [".edges.tsv", ".clustering.tsv", ".provenance.json"] {
        assert_eq!(read(&a, suffix), read(&b, suffix), "{suffix}");
    }
    assert_eq!(read(&a, ".clustering.tsv"), "1\tA\n2\tA\n3\tA\n");
    let prov: serde_json::Value = serde_json::from_str(&read(&a, ".provenance.json")).unwrap();
    assert_eq!(prov["seed"], 42);
    assert_eq!(prov["mode"], "ecsbm");
}

#[test]
fn sbm_mode_and_vertex_orders() {
    let t = toy();
    let p = generate(&t, "plain", &["--mode", "sbm"]);
    let prov: serde_json::Value = serde_json::from_str(&read(&p, ".provenance.json")).unwrap();
    assert_eq!(prov["mode"], "sbm");
    assert!(prov["plain"].is_object());
    for order in ["degree", "id", "random"] {
        let p = generate(&t, order, &["--kecssn-order", order]);
        assert!(!read(&p, ".edges.tsv").is_empty());
    }
}

#[test]
fn evaluate_against_itself_is_zero() {
    let t = toy();
    let out_json = t.root.join("d.json");
    let csv = t.root.join("d.csv");
    let out = ecsbm(&[
        "evaluate",
        "--network",
        s(&t.edges),
        "--clustering",
        s(&t.clusters),
        "--synthetic-network",
        s(&t.edges),
        "--synthetic-clustering",
        s(&t.clusters),
        "--out",
        s(&out_json),
        "--csv",
        s(&csv),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out_json).unwrap()).unwrap();
    let map = v.as_object().unwrap();
    assert_eq!(map.len(), 8);
    for (name, entry) in map {
        assert_eq!(entry["value"].as_f64(), Some(0.0), "{name}");
    }
    assert_eq!(v["global_ccoeff"]["metric"], "SRD");
    let rows = fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("stat,index,empirical,synthetic\n"));
    assert!(rows.contains("o_deg,0,1,1\n"));
}

#[test]
fn evaluate_generated_output_with_subset() {
    let t = toy();
    let p = generate(&t, "g", &[]);
    let out_json = t.root.join("d.json");
    let out = ecsbm(&[
        "evaluate",
        "--network",
        s(&t.edges),
        "--clustering",
        s(&t.clusters),
        "--synthetic-network",
        &format!("{}.edges.tsv", p.display()),
        "--synthetic-clustering",
        &format!("{}.clustering.tsv", p.display()),
        "--stats",
        "degree,mincuts",
        "--f32",
        "--out",
        s(&out_json),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out_json).unwrap()).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["degree", "mincuts"]);
    assert!(v["degree"]["value"].as_f64().unwrap() >= 0.0);
}

#[test]
fn diagnose_fractions_match_independent_count() {
    let f = PlantedPartition {
        n_vertices: 1500,
        n_clusters: 80,
        internal_degree: 1.5,
        seed: 9,
        ..Default::default()
    }
    .generate();
    let dir = tempfile::tempdir().unwrap();
    let (e, c, o) = (dir.path().join("e.tsv"), dir.path().join("c.tsv"), dir.path().join("diag.json"));
    write_edges(&e, &f.graph, None).unwrap();
    write_clustering(&c, &f.clustering, None, None).unwrap();
    let out = ecsbm(&["diagnose", "--network", s(&e), "--clustering", s(&c), "--seed", "5", "--out", s(&o)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&o).unwrap()).unwrap();

    let inp = load_input(&e, &c, false).unwrap();
    let mg = sample_plain_sbm(&inp.graph, &inp.clustering, 5).unwrap();
    let mut counts: HashMap<(u32, u32), usize> = HashMap::new();
    for &(a, b) in &mg.edges {
        *counts.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    let loops: usize = counts.iter().filter(|(k, _)| k.0 == k.1).map(|(_, &m)| m).sum();
    let parallels: usize = counts.iter().filter(|(k, _)| k.0 != k.1).map(|(_, &m)| m - 1).sum();
    let pairs: Vec<(usize, usize)> = counts
        .keys()
        .filter(|k| k.0 != k.1)
        .map(|&(a, b)| (a as usize, b as usize))
        .collect();
    let simple = Graph::from_edges(inp.graph.n_vertices(), &pairs).unwrap();
    let disconnected = inp
        .clustering
        .clusters()
        .iter()
        .filter(|m| {
            let m: Vec<usize> = m.iter().map(|&x| x as usize).collect();
            !is_connected(&induced_subgraph(&simple, &m).unwrap().graph)
        })
        .count();

    let excess = (loops + parallels) as f64 / mg.n_edges() as f64;
    let frac = disconnected as f64 / inp.clustering.n_clusters() as f64;
    assert_eq!(v["excess_fraction"].as_f64().unwrap(), excess);
    assert_eq!(v["disconnected_fraction"].as_f64().unwrap(), frac);
    assert!((0.0..=1.0).contains(&excess) && (0.0..=1.0).contains(&frac));
    assert_eq!(v["n_self_loops"].as_u64().unwrap() as usize, loops);
}

#[test]
fn extract_writes_sidecar() {
    let t = toy();
    let out_json = t.root.join("params.json");
    let out = ecsbm(&[
        "extract",
        "--network",
        s(&t.edges),
        "--clustering",
        s(&t.clusters),
        "--out",
        s(&out_json),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out_json).unwrap()).unwrap();
    assert_eq!(v["connectivity"]["lambda"], serde_json::json!([2]));
    assert_eq!(v["clustered"]["degrees"], serde_json::json!([2, 2, 2, 0]));
    assert_eq!(v["outlier"]["degrees"], serde_json::json!([0, 0, 1, 1]));
    assert_eq!(v["node_ids"], serde_json::json!(["1", "2", "3", "4"]));
}

#[test]
fn exit_codes() {
    let t = toy();
    let bad = t.root.join("bad.tsv");
    fs::write(&bad, "1 2\n2\n").unwrap();
    let prefix = t.root.join("x");
    let out = ecsbm(&[
        "generate",
        "--network",
        s(&bad),
        "--clustering",
        s(&t.clusters),
        "--out-prefix",
        s(&prefix),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.tsv:2:"), "{err}");
    assert!(!Path::new(&format!("{}.edges.tsv", prefix.display())).exists());

    let dup = t.root.join("dup.tsv");
    fs::write(&dup, "1 2\n2 1\n").unwrap();
    let args = ["generate", "--network", s(&dup), "--clustering", s(&t.clusters), "--out-prefix", s(&prefix)];
    assert_eq!(ecsbm(&args).status.code(), Some(2));
    let mut coerced = args.to_vec();
    coerced.push("--coerce-simple");
    assert!(ecsbm(&coerced).status.success());

    assert_eq!(ecsbm(&["generate", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(ecsbm(&[]).status.code(), Some(1));
    assert_eq!(ecsbm(&["--help"]).status.code(), Some(0));
    let missing = ecsbm(&["diagnose", "--network", "/nonexistent", "--clustering", s(&t.clusters), "--out", "x"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn thread_env_fallback() {
    let t = toy();
    let p = t.root.join("env");
    let out = Command::new(env!("CARGO_BIN_EXE_ecsbm"))
        .env("ECSBM_THREADS", "2")
        .args(["generate", "--network", s(&t.edges), "--clustering", s(&t.clusters), "--seed", "42"])
        .arg("--out-prefix")
        .arg(&p)
        .output()
        .unwrap();
    assert!(out.status.success());
    let reference = generate(&t, "ref", &["--threads", "1"]);
    assert_eq!(read(&p, ".edges.tsv"), read(&reference, ".edges.tsv"));
}

#[test]
fn written_edges_reingest_identically() {
    let f = PlantedPartition {
        n_vertices: 400,
        outlier_fraction: 0.0,
        seed: 12,
        ..Default::default()
    }
    .generate();
    let dir = tempfile::tempdir().unwrap();
    let (e, c) = (dir.path().join("e.tsv"), dir.path().join("c.tsv"));
    write_edges(&e, &f.graph, None).unwrap();
    write_clustering(&c, &f.clustering, None, None).unwrap();
    let inp = load_input(&e, &c, false).unwrap();
    assert_eq!(inp.graph, f.graph);
    // Labels are renumbered on ingest; the partition is what must survive.
    let blocks = |c: &ecsbm::Clustering| {
        let mut b = c.clusters().to_vec();
        b.sort();
        b
    };
    assert_eq!(blocks(&inp.clustering), blocks(&f.clustering));
}
