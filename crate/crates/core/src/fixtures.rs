//! Planted-partition networks for tests and benchmarks.
//!
//! Each cluster starts from a random spanning tree, so it is connected, and
//! then receives extra internal edges between endpoints drawn in proportion
//! to a heavy-tailed vertex weight. Inter-cluster and outlier edges are drawn
//! the same way across the whole graph.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng as _;

use crate::clustering::Clustering;
use crate::graph::Graph;
use crate::rng::{stream, Domain, Rng};

#[derive(Debug, Clone)]
pub struct PlantedPartition {
    pub n_vertices: usize,
    pub n_clusters: usize,
    pub outlier_fraction: f64,
    /// Extra internal degree per clustered vertex, on top of the tree.
    pub internal_degree: f64,
    /// Inter-cluster edges per clustered vertex.
    pub external_degree: f64,
    /// Edges per outlier.
    pub outlier_degree: f64,
    /// Pareto shape of the vertex weights; smaller is more skewed.
    pub weight_shape: f64,
    pub seed: u64,
}

impl Default for PlantedPartition {
    fn default() -> Self {
        PlantedPartition {
            n_vertices: 1000,
            n_clusters: 40,
            outlier_fraction: 0.1,
            internal_degree: 4.0,
            external_degree: 1.0,
            outlier_degree: 2.0,
            weight_shape: 2.5,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub graph: Graph,
    pub clustering: Clustering,
}

fn pareto(rng: &mut Rng, shape: f64) -> f64 {
    let u: f64 = rng.gen();
    (1.0 - u).powf(-1.0 / shape).min(100.0)
}

impl PlantedPartition {
    pub fn generate(&self) -> Fixture {
        let n = self.n_vertices;
        let mut rng = stream(self.seed, Domain::Fixture, 0);
        let n_out = ((n as f64) * self.outlier_fraction).round() as usize;
        let n_in = n - n_out.min(n);
        let k = self.n_clusters.clamp(1, n_in.max(1));

        // Cluster sizes: a Zipf-like split, every cluster at least 2.
        let raw: Vec<f64> = (0..k).map(|i| 1.0 / (i as f64 + 1.0).powf(0.7)).collect();
        let total: f64 = raw.iter().sum();
        let min_size = if n_in >= 2 * k { 2 } else { 1 };
        let spare = n_in - min_size * k;
        let mut sizes: Vec<usize> = raw.iter().map(|w| min_size + (w / total * spare as f64) as usize).collect();
        let short = n_in - sizes.iter().sum::<usize>();
        for i in 0..short {
            sizes[i % k] += 1;
        }

        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let mut assignment = vec![None; n];
        let mut clusters: Vec<Vec<usize>> = Vec::with_capacity(k);
        let mut next = 0;
        for (ci, &s) in sizes.iter().enumerate() {
            let mut members: Vec<usize> = order[next..next + s].to_vec();
            members.sort_unstable();
            for &v in &members {
                assignment[v] = Some(ci);
            }
            clusters.push(members);
            next += s;
        }
        let outliers: Vec<usize> = order[next..].to_vec();

        let weight: Vec<f64> = (0..n).map(|_| pareto(&mut rng, self.weight_shape)).collect();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut push = |u: usize, v: usize| {
            if u != v {
                pairs.push((u.min(v) as u32, u.max(v) as u32));
            }
        };

        for members in &clusters {
            for i in 1..members.len() {
                let j = rng.gen_range(0..i);
                push(members[i], members[j]);
            }
            if members.len() < 3 {
                continue;
            }
            let dist = WeightedIndex::new(members.iter().map(|&v| weight[v])).expect("positive weights");
            let extra = (members.len() as f64 * self.internal_degree / 2.0).round() as usize;
            for _ in 0..extra {
                push(members[dist.sample(&mut rng)], members[dist.sample(&mut rng)]);
            }
        }

        let clustered: Vec<usize> = clusters.iter().flatten().copied().collect();
        if clustered.len() >= 2 {
            let dist = WeightedIndex::new(clustered.iter().map(|&v| weight[v])).expect("positive weights");
            let m_ext = (clustered.len() as f64 * self.external_degree / 2.0).round() as usize;
            for _ in 0..m_ext {
                let (u, v) = (clustered[dist.sample(&mut rng)], clustered[dist.sample(&mut rng)]);
                if assignment[u] != assignment[v] {
                    push(u, v);
                }
            }
        }

        let all = WeightedIndex::new(&weight).ok();
        if let Some(all) = all {
            for &o in &outliers {
                let m = (self.outlier_degree * weight[o]).round().max(1.0) as usize;
                for _ in 0..m {
                    push(o, all.sample(&mut rng));
                }
            }
        }

        pairs.sort_unstable();
        pairs.dedup();
        Fixture {
            graph: Graph::from_sorted_pairs(n, &pairs),
            clustering: Clustering::from_assignment(assignment).expect("clusters are non-empty"),
        }
    }
}

/// Five small fixtures of increasing size and varied density.
pub fn desk_fixtures() -> Vec<(String, Fixture)> {
    let specs = [
        ("sparse-1k", 1000, 60, 0.10, 1.0, 0.5, 2.2),
        ("medium-2k", 2000, 80, 0.15, 4.0, 1.0, 2.5),
        ("dense-3k", 3000, 50, 0.05, 10.0, 2.0, 3.0),
        ("skewed-5k", 5000, 200, 0.20, 3.0, 1.0, 1.8),
        ("large-10k", 10000, 300, 0.10, 6.0, 1.5, 2.5),
    ];
    specs
        .iter()
        .enumerate()
        .map(|(i, &(name, n, k, out, din, dext, shape))| {
            let planted = PlantedPartition {
                n_vertices: n,
                n_clusters: k,
                outlier_fraction: out,
                internal_degree: din,
                external_degree: dext,
                outlier_degree: 2.0,
                weight_shape: shape,
                seed: 100 + i as u64,
            };
            (name.to_owned(), planted.generate())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{induced_subgraph, is_connected};

    #[test]
    fn clusters_are_connected_and_sized() {
        let f = PlantedPartition::default().generate();
        assert_eq!(f.graph.n_vertices(), 1000);
        assert_eq!(f.clustering.n_clusters(), 40);
        assert_eq!(f.clustering.n_outliers(), 100);
        for members in f.clustering.clusters() {
            let m: Vec<usize> = members.iter().map(|&v| v as usize).collect();
            assert!(m.len() >= 2);
            assert!(is_connected(&induced_subgraph(&f.graph, &m).unwrap().graph));
        }
    }

    #[test]
    fn deterministic_by_seed() {
        let a = PlantedPartition::default().generate();
        let b = PlantedPartition::default().generate();
        assert_eq!(a.graph, b.graph);
        let c = PlantedPartition { seed: 2, ..Default::default() }.generate();
        assert_ne!(a.graph, c.graph);
    }

    #[test]
    fn tiny_inputs() {
        let f = PlantedPartition {
            n_vertices: 3,
            n_clusters: 5,
            outlier_fraction: 0.0,
            ..Default::default()
        }
        .generate();
        assert_eq!(f.clustering.n_clusters(), 3);
        assert_eq!(f.graph.n_vertices(), 3);
    }
}
