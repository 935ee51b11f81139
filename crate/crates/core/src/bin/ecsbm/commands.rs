use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::info;
use serde::Serialize;

use ecsbm::io::{load_input, load_input_aligned, write_atomic, write_clustering, write_edges, write_json, Input};
use ecsbm::params::{outlier_aux_params, ConnectivityTargets};
use ecsbm::pipeline::{generate, sample_plain_sbm, GenerateConfig, Provenance};
use ecsbm::stats::{compute_report, distances, Stat, StatReport, StatsOptions};
use ecsbm::{diagnose_sbm_artifacts, extract_connectivity_targets, extract_sbm_params, split_subnetworks};
use ecsbm::{Real, Result, SbmDiagnostics, SbmParams};

use crate::args::{Command, DiagnoseArgs, EvaluateArgs, ExtractArgs, GenerateArgs, InputArgs};

pub fn run(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Extract(a) => extract(a),
        Command::Generate(a) => generate_cmd(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Diagnose(a) => diagnose(a),
    }
}

fn load(a: &InputArgs) -> Result<Input> {
    let inp = load_input(&a.network, &a.clustering, a.coerce_simple)?;
    if inp.dropped_edges > 0 {
        log::warn!("dropped {} self-loops or duplicate edges", inp.dropped_edges);
    }
    info!(
        "{} vertices, {} edges, {} clusters, {} outliers",
        inp.graph.n_vertices(),
        inp.graph.n_edges(),
        inp.clustering.n_clusters(),
        inp.clustering.n_outliers()
    );
    Ok(inp)
}

#[derive(Serialize)]
struct Sidecar {
    n_vertices: usize,
    n_clusters: usize,
    n_outliers: usize,
    node_ids: Vec<String>,
    cluster_labels: Vec<String>,
    /// Clustered subnetwork under the clustering plus outlier singletons.
    clustered: SbmParams,
    /// Outlier subnetwork under the same blocks.
    outlier: SbmParams,
    connectivity: ConnectivityTargets,
}

fn extract(a: &ExtractArgs) -> Result<()> {
    let inp = load(&a.input)?;
    let (g, c) = (&inp.graph, &inp.clustering);
    let parts = split_subnetworks(g, c)?;
    let sidecar = Sidecar {
        n_vertices: g.n_vertices(),
        n_clusters: c.n_clusters(),
        n_outliers: c.n_outliers(),
        clustered: extract_sbm_params(&parts.clustered, &c.with_outlier_singletons())?,
        outlier: outlier_aux_params(&parts.outlier, c)?,
        connectivity: extract_connectivity_targets(&parts.clustered, c)?,
        node_ids: inp.node_ids,
        cluster_labels: inp.cluster_labels,
    };
    write_json(&a.out, &sidecar)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

#[derive(Serialize)]
struct GenerateProvenance<'a> {
    #[serde(flatten)]
    run: &'a Provenance,
    kecssn_order: String,
    dropped_input_edges: usize,
}

fn generate_cmd(a: &GenerateArgs) -> Result<()> {
    let t = Instant::now();
    let inp = load(&a.input)?;
    info!("loaded input in {:.2?}", t.elapsed());
    let mut cfg = GenerateConfig::with_seed(a.seed);
    cfg.kecssn.ordering = a.kecssn_order.into();
    let t = Instant::now();
    let out = generate(&inp.graph, &inp.clustering, a.mode.into(), &cfg)?;
    info!("synthetic network has {} edges ({:.2?})", out.network.n_edges(), t.elapsed());
    let t = Instant::now();

    write_edges(&with_suffix(&a.out_prefix, ".edges.tsv"), &out.network, Some(&inp.node_ids))?;
    write_clustering(
        &with_suffix(&a.out_prefix, ".clustering.tsv"),
        &out.clustering,
        Some(&inp.node_ids),
        Some(&inp.cluster_labels),
    )?;
    let prov = GenerateProvenance {
        run: &out.provenance,
        kecssn_order: format!("{:?}", a.kecssn_order).to_lowercase(),
        dropped_input_edges: inp.dropped_edges,
    };
    write_json(&with_suffix(&a.out_prefix, ".provenance.json"), &prov)?;
    info!("wrote outputs in {:.2?}", t.elapsed());
    Ok(())
}

fn evaluate(a: &EvaluateArgs) -> Result<()> {
    if a.f32 {
        evaluate_as::<f32>(a)
    } else {
        evaluate_as::<f64>(a)
    }
}

fn evaluate_as<F: Real>(a: &EvaluateArgs) -> Result<()> {
    let emp = load(&a.input)?;
    let syn = load_input_aligned(
        &a.synthetic_network,
        &a.synthetic_clustering,
        a.input.coerce_simple,
        emp.universe(),
    )?;
    let opts = StatsOptions::<F> {
        selection: a.stats.clone(),
        exclude_outliers_from_mixing: a.exclude_outliers,
        ..Default::default()
    };
    let r_emp = compute_report(&emp.graph, &emp.clustering, &opts)?;
    let r_syn = compute_report(&syn.graph, &syn.clustering, &opts)?;
    let report = distances(&r_emp, &r_syn)?;
    write_json(&a.out, &report)?;
    if let Some(csv) = &a.csv {
        write_sequences(csv, &r_emp, &r_syn)?;
    }
    Ok(())
}

/// `stat,index,empirical,synthetic`, one row per aligned entry.
fn write_sequences<F: Real>(path: &Path, emp: &StatReport<F>, syn: &StatReport<F>) -> Result<()> {
    write_atomic(path, |w| {
        writeln!(w, "stat,index,empirical,synthetic")?;
        for s in Stat::ALL {
            if let (Some(x), Some(y)) = (emp.scalar(s), syn.scalar(s)) {
                writeln!(w, "{s},0,{x},{y}")?;
            }
            if let (Some(xs), Some(ys)) = (emp.sequence(s), syn.sequence(s)) {
                for (i, (x, y)) in xs.iter().zip(ys).enumerate() {
                    writeln!(w, "{s},{i},{x},{y}")?;
                }
            }
        }
        Ok(())
    })
}

#[derive(Serialize)]
struct Diagnosis {
    seed: u64,
    #[serde(flatten)]
    diagnostics: SbmDiagnostics,
}

fn diagnose(a: &DiagnoseArgs) -> Result<()> {
    let inp = load(&a.input)?;
    let mg = sample_plain_sbm(&inp.graph, &inp.clustering, a.seed)?;
    let diagnostics = diagnose_sbm_artifacts(&mg, &inp.clustering);
    write_json(&a.out, &Diagnosis { seed: a.seed, diagnostics })
}
