//! End-to-end generation.
//!
//! EC-SBM runs three stages over the decomposition of the input network into
//! its clustered and outlier subnetworks:
//!
//! 1. clustered subnetwork: a k-edge-connected spanning subgraph per cluster
//!    (k = the cluster's empirical edge connectivity), then a block-model
//!    sample of whatever edge budget remains, simplified and unioned in;
//! 2. outlier subnetwork: a block-model sample over the clustering extended
//!    with one singleton block per outlier, simplified;
//! 3. degree correction of the union against the empirical degrees.
//!
//! The plain block-model baseline samples the whole network in one shot.

mod degree_correction;

pub use degree_correction::{
    stage3_degree_correction, total_deficit, CorrectionReport, DegreeCorrection, GreedyMaxDeficit,
};

use log::debug;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{graph_union, simplify, Graph, MultiGraph};
use crate::kecssn::{gen_kecssn, KecssnConfig, ParamBudget};
use crate::params::{
    extract_connectivity_targets, extract_sbm_params, outlier_aux_params, split_subnetworks,
};
use crate::rng::{stream, Domain};
use crate::sampler::sample_sbm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Ecsbm,
    Sbm,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GenerateConfig {
    pub seed: u64,
    pub kecssn: KecssnConfig,
}

impl GenerateConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenerateConfig {
            seed,
            kecssn: KecssnConfig {
                rng_seed: seed,
                ..Default::default()
            },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage1Provenance {
    pub kecssn_edges: usize,
    pub budget_charges: usize,
    pub budget_reversals: usize,
    pub sampled_edges: usize,
    pub excess_edges: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleProvenance {
    pub sampled_edges: usize,
    pub excess_edges: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage3Provenance {
    pub added_edges: usize,
    pub deficit_before: u64,
    pub residual_deficit: u64,
}

/// Stage-by-stage bookkeeping of one generation run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub mode: Mode,
    pub seed: u64,
    pub n_vertices: usize,
    pub n_clusters: usize,
    pub n_outliers: usize,
    pub empirical_edges: usize,
    pub clustered_edges: usize,
    pub outlier_edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage1: Option<Stage1Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage2: Option<SampleProvenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage3: Option<Stage3Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plain: Option<SampleProvenance>,
    pub final_edges: usize,
}

#[derive(Debug, Clone)]
pub struct SyntheticResult {
    pub network: Graph,
    /// Identical to the input clustering.
    pub clustering: Clustering,
    pub provenance: Provenance,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Stage1Output {
    pub graph: Graph,
    pub lambda: Vec<u64>,
    pub provenance: Stage1Provenance,
}

/// Synthetic clustered subnetwork.
pub fn stage1_clustered(clustered: &Graph, c: &Clustering, cfg: &GenerateConfig) -> Result<Stage1Output> {
    let n = clustered.n_vertices();
    // Outlier singletons carry zero degree here; they only make `b` total.
    let mut params = extract_sbm_params(clustered, &c.with_outlier_singletons())?;
    let lambda = extract_connectivity_targets(clustered, c)?.lambda;

    let per_cluster: Vec<(ParamBudget, Vec<(u32, u32)>)> = c
        .clusters()
        .par_iter()
        .enumerate()
        .map(|(l, members)| {
            let mut budget = ParamBudget::for_cluster(&params, l, members);
            let mut rng = stream(cfg.seed, Domain::Kecssn, l as u64);
            let edges = gen_kecssn(members, lambda[l] as usize, &mut budget, &cfg.kecssn, &mut rng)?;
            Ok((budget, edges))
        })
        .collect::<Result<_>>()?;

    let mut prov = Stage1Provenance::default();
    let mut mcs_pairs = Vec::new();
    for (budget, edges) in &per_cluster {
        budget.commit(&mut params);
        prov.budget_charges += budget.applied();
        prov.budget_reversals += budget.reversals().len();
        mcs_pairs.extend_from_slice(edges);
    }
    mcs_pairs.sort_unstable();
    prov.kecssn_edges = mcs_pairs.len();
    let mcs = Graph::from_sorted_pairs(n, &mcs_pairs);

    let sample = sample_sbm(&params, &mut stream(cfg.seed, Domain::ClusteredSbm, 0))?;
    let base = simplify(&sample);
    prov.sampled_edges = sample.n_edges();
    prov.excess_edges = base.excess;
    let graph = graph_union(&mcs, &base.graph)?;
    prov.edges = graph.n_edges();
    debug!(
        "stage 1: {} spanning edges, {} sampled, {} excess, {} total",
        prov.kecssn_edges, prov.sampled_edges, prov.excess_edges, prov.edges
    );
    Ok(Stage1Output {
        graph,
        lambda,
        provenance: prov,
    })
}

/// Synthetic outlier subnetwork, before and after simplification.
pub fn stage2_outliers_sample(outlier: &Graph, c: &Clustering, cfg: &GenerateConfig) -> Result<MultiGraph> {
    let params = outlier_aux_params(outlier, c)?;
    sample_sbm(&params, &mut stream(cfg.seed, Domain::OutlierSbm, 0))
}

pub fn stage2_outliers(outlier: &Graph, c: &Clustering, cfg: &GenerateConfig) -> Result<(Graph, SampleProvenance)> {
    let sample = stage2_outliers_sample(outlier, c, cfg)?;
    let simple = simplify(&sample);
    if let Some((u, v)) = simple
        .graph
        .edges()
        .find(|&(u, v)| !c.is_outlier(u) && !c.is_outlier(v))
    {
        return Err(Error::Invariant(format!(
            "outlier stage produced clustered-clustered edge ({u}, {v})"
        )));
    }
    let prov = SampleProvenance {
        sampled_edges: sample.n_edges(),
        excess_edges: simple.excess,
        edges: simple.graph.n_edges(),
    };
    Ok((simple.graph, prov))
}

fn base_provenance(g: &Graph, c: &Clustering, mode: Mode, seed: u64) -> Provenance {
    Provenance {
        mode,
        seed,
        n_vertices: g.n_vertices(),
        n_clusters: c.n_clusters(),
        n_outliers: c.n_outliers(),
        empirical_edges: g.n_edges(),
        ..Default::default()
    }
}

fn check_universe(g: &Graph, c: &Clustering) -> Result<()> {
    if g.n_vertices() != c.n_vertices() {
        return Err(Error::VertexUniverseMismatch {
            left: g.n_vertices(),
            right: c.n_vertices(),
        });
    }
    Ok(())
}

pub fn generate_ecsbm(g: &Graph, c: &Clustering, cfg: &GenerateConfig) -> Result<SyntheticResult> {
    check_universe(g, c)?;
    let mut prov = base_provenance(g, c, Mode::Ecsbm, cfg.seed);
    let parts = split_subnetworks(g, c)?;
    prov.clustered_edges = parts.clustered.n_edges();
    prov.outlier_edges = parts.outlier.n_edges();

    let s1 = stage1_clustered(&parts.clustered, c, cfg)?;
    let (s2, s2_prov) = stage2_outliers(&parts.outlier, c, cfg)?;
    let partial = graph_union(&s1.graph, &s2)?;
    if partial.n_edges() != s1.graph.n_edges() + s2.n_edges() {
        return Err(Error::Invariant("stage 1 and stage 2 edge sets overlap".into()));
    }

    let target = g.degrees();
    let (network, report) = stage3_degree_correction(
        &partial,
        &target,
        &mut stream(cfg.seed, Domain::DegreeCorrection, 0),
    )?;
    prov.stage1 = Some(s1.provenance);
    prov.stage2 = Some(s2_prov);
    prov.stage3 = Some(Stage3Provenance {
        added_edges: report.added.len(),
        deficit_before: report.deficit_before,
        residual_deficit: report.residual_deficit,
    });
    prov.final_edges = network.n_edges();
    Ok(SyntheticResult {
        network,
        clustering: c.clone(),
        provenance: prov,
        seed: cfg.seed,
    })
}

/// Raw one-shot block-model sample of the whole network, outliers as
/// singleton blocks.
pub fn sample_plain_sbm(g: &Graph, c: &Clustering, seed: u64) -> Result<MultiGraph> {
    check_universe(g, c)?;
    let params = extract_sbm_params(g, &c.with_outlier_singletons())?;
    sample_sbm(&params, &mut stream(seed, Domain::PlainSbm, 0))
}

pub fn generate_plain_sbm(g: &Graph, c: &Clustering, cfg: &GenerateConfig) -> Result<SyntheticResult> {
    let sample = sample_plain_sbm(g, c, cfg.seed)?;
    let simple = simplify(&sample);
    let parts = split_subnetworks(g, c)?;
    let mut prov = base_provenance(g, c, Mode::Sbm, cfg.seed);
    prov.clustered_edges = parts.clustered.n_edges();
    prov.outlier_edges = parts.outlier.n_edges();
    prov.plain = Some(SampleProvenance {
        sampled_edges: sample.n_edges(),
        excess_edges: simple.excess,
        edges: simple.graph.n_edges(),
    });
    prov.final_edges = simple.graph.n_edges();
    Ok(SyntheticResult {
        network: simple.graph,
        clustering: c.clone(),
        provenance: prov,
        seed: cfg.seed,
    })
}

pub fn generate(g: &Graph, c: &Clustering, mode: Mode, cfg: &GenerateConfig) -> Result<SyntheticResult> {
    match mode {
        Mode::Ecsbm => generate_ecsbm(g, c, cfg),
        Mode::Sbm => generate_plain_sbm(g, c, cfg),
    }
}
