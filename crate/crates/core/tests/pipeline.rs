use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ecsbm::fixtures::PlantedPartition;
use ecsbm::graph::induced_subgraph;
use ecsbm::kecssn::VertexOrder;
use ecsbm::stats::{compute_report, distances, Stat, StatsOptions};
use ecsbm::{edge_connectivity, generate, generate_ecsbm, Clustering, GenerateConfig, Graph, Mode};

fn random_instance(seed: u64) -> (Graph, Clustering) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = r.gen_range(4..40);
    let k = r.gen_range(1..5);
    let labels: Vec<Option<usize>> = (0..n)
        .map(|v| if v < k { Some(v) } else if r.gen_bool(0.15) { None } else { Some(r.gen_range(0..k)) })
        .collect();
    let p = r.gen_range(0.05..0.6);
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    (Graph::from_edges(n, &e).unwrap(), Clustering::from_assignment(labels).unwrap())
}

fn mincuts(g: &Graph, c: &Clustering) -> Vec<u64> {
    c.clusters()
        .iter()
        .map(|m| {
            let m: Vec<usize> = m.iter().map(|&v| v as usize).collect();
            edge_connectivity(&induced_subgraph(g, &m).unwrap().graph).cut_size
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ecsbm_dominates_cluster_connectivity(seed in 0u64..1_000_000, gen_seed in 0u64..1000) {
        let (g, c) = random_instance(seed);
        let out = generate_ecsbm(&g, &c, &GenerateConfig::with_seed(gen_seed)).unwrap();
        prop_assert_eq!(out.network.n_vertices(), g.n_vertices());
        prop_assert_eq!(&out.clustering, &c);
        let (emp, syn) = (mincuts(&g, &c), mincuts(&out.network, &c));
        for i in 0..emp.len() {
            prop_assert!(syn[i] >= emp[i], "cluster {}: {} < {}", i, syn[i], emp[i]);
        }
        let s3 = out.provenance.stage3.unwrap();
        prop_assert_eq!(out.provenance.final_edges, out.network.n_edges());
        prop_assert!(s3.residual_deficit <= s3.deficit_before);
    }

    #[test]
    fn every_vertex_order_keeps_connectivity(seed in 0u64..1_000_000) {
        let (g, c) = random_instance(seed);
        for ordering in [VertexOrder::DegreeDescending, VertexOrder::VertexId, VertexOrder::Random] {
            let mut cfg = GenerateConfig::with_seed(seed);
            cfg.kecssn.ordering = ordering;
            let out = generate_ecsbm(&g, &c, &cfg).unwrap();
            let (emp, syn) = (mincuts(&g, &c), mincuts(&out.network, &c));
            prop_assert!(emp.iter().zip(&syn).all(|(a, b)| b >= a));
        }
    }
}

#[test]
fn single_and_double_precision_agree() {
    let f = PlantedPartition {
        n_vertices: 600,
        n_clusters: 20,
        seed: 4,
        ..Default::default()
    }
    .generate();
    let r64 = compute_report::<f64>(&f.graph, &f.clustering, &StatsOptions::default()).unwrap();
    let r32 = compute_report::<f32>(&f.graph, &f.clustering, &StatsOptions::default()).unwrap();
    let rel = |a: f64, b: f32| ((a - b as f64) / a.abs().max(1e-12)).abs();
    assert!(rel(r64.char_time.unwrap(), r32.char_time.unwrap()) < 1e-3);
    assert!(rel(r64.global_ccoeff.unwrap(), r32.global_ccoeff.unwrap()) < 1e-5);
    assert_eq!(r64.pseudo_diameter.unwrap() as f32, r32.pseudo_diameter.unwrap());
    assert_eq!(r64.degree.as_ref().unwrap().len(), 600);
    assert_eq!(r64.mincuts.as_ref().unwrap().len(), 20);
    assert_eq!(r64.o_deg.as_ref().unwrap().len(), f.clustering.n_outliers());
}

#[test]
fn ecsbm_beats_plain_sbm_on_cluster_connectivity() {
    let f = PlantedPartition {
        n_vertices: 2000,
        n_clusters: 100,
        internal_degree: 1.0,
        seed: 21,
        ..Default::default()
    }
    .generate();
    let opts = StatsOptions::<f64> {
        selection: "mincuts,degree".parse().unwrap(),
        ..Default::default()
    };
    let emp = compute_report(&f.graph, &f.clustering, &opts).unwrap();
    let cfg = GenerateConfig::with_seed(1);
    let ec = generate(&f.graph, &f.clustering, Mode::Ecsbm, &cfg).unwrap();
    let sbm = generate(&f.graph, &f.clustering, Mode::Sbm, &cfg).unwrap();
    let d_ec = distances(&emp, &compute_report(&ec.network, &ec.clustering, &opts).unwrap()).unwrap();
    let d_sbm = distances(&emp, &compute_report(&sbm.network, &sbm.clustering, &opts).unwrap()).unwrap();
    assert!(d_ec.value(Stat::Mincuts).unwrap() < d_sbm.value(Stat::Mincuts).unwrap());
}
