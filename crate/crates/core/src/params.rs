//! Decomposition of a clustered network and extraction of the block-model
//! parameters `(b, d, e)` plus per-cluster connectivity targets.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{induced_by_sorted, Graph};
use crate::mincut::edge_connectivity;

/// Symmetric block edge-count matrix, stored sparsely by its upper triangle.
///
/// Off-diagonal cells count edges between two blocks. Diagonal cells hold
/// twice the number of edges inside the block, so every row sums to the
/// block's total degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeCounts {
    cells: BTreeMap<(u32, u32), u64>,
}

#[inline]
fn key(r: usize, s: usize) -> (u32, u32) {
    if r <= s {
        (r as u32, s as u32)
    } else {
        (s as u32, r as u32)
    }
}

impl EdgeCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, r: usize, s: usize) -> u64 {
        self.cells.get(&key(r, s)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, r: usize, s: usize, value: u64) {
        if value == 0 {
            self.cells.remove(&key(r, s));
        } else {
            self.cells.insert(key(r, s), value);
        }
    }

    pub fn add(&mut self, r: usize, s: usize, delta: u64) {
        if delta > 0 {
            *self.cells.entry(key(r, s)).or_insert(0) += delta;
        }
    }

    /// Nonzero cells `(r, s, value)` with `r <= s`, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.cells
            .iter()
            .map(|(&(r, s), &v)| (r as usize, s as usize, v))
    }

    pub fn n_nonzero(&self) -> usize {
        self.cells.len()
    }

    /// `Σ_s e[r][s]` for every block `r < n_blocks`.
    pub fn row_sums(&self, n_blocks: usize) -> Vec<u64> {
        let mut sums = vec![0u64; n_blocks];
        for (r, s, v) in self.iter() {
            sums[r] += v;
            if r != s {
                sums[s] += v;
            }
        }
        sums
    }

    /// Number of edges the matrix describes.
    pub fn total_edges(&self) -> u64 {
        self.iter()
            .map(|(r, s, v)| if r == s { v / 2 } else { v })
            .sum()
    }

    pub fn to_dense(&self, n_blocks: usize) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; n_blocks]; n_blocks];
        for (r, s, v) in self.iter() {
            m[r][s] = v;
            m[s][r] = v;
        }
        m
    }

    pub fn from_dense(matrix: &[Vec<u64>]) -> Result<Self> {
        let mut e = EdgeCounts::new();
        for (r, row) in matrix.iter().enumerate() {
            for (s, &v) in row.iter().enumerate() {
                if matrix[s][r] != v {
                    return Err(Error::Invariant(format!(
                        "edge-count matrix not symmetric at ({r}, {s})"
                    )));
                }
                if r <= s {
                    e.set(r, s, v);
                }
            }
        }
        Ok(e)
    }
}

impl Serialize for EdgeCounts {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|(r, s, v)| [r as u64, s as u64, v]))
    }
}

impl<'de> Deserialize<'de> for EdgeCounts {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let cells: Vec<[u64; 3]> = Vec::deserialize(deserializer)?;
        let mut e = EdgeCounts::new();
        for [r, s, v] in cells {
            e.add(r as usize, s as usize, v);
        }
        Ok(e)
    }
}

/// Input to the micro-canonical degree-corrected block model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SbmParams {
    /// Block of every vertex.
    pub blocks: Vec<u32>,
    /// Target degree of every vertex.
    pub degrees: Vec<u64>,
    pub edge_counts: EdgeCounts,
    pub n_blocks: usize,
}

impl SbmParams {
    pub fn n_vertices(&self) -> usize {
        self.blocks.len()
    }

    /// Sum of target degrees within each block.
    pub fn block_degree_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.n_blocks];
        for (v, &b) in self.blocks.iter().enumerate() {
            sums[b as usize] += self.degrees[v];
        }
        sums
    }

    /// Checks even diagonals and that each block's stub count equals its
    /// edge-count row sum.
    pub fn validate(&self) -> Result<()> {
        if self.degrees.len() != self.blocks.len() {
            return Err(Error::Invariant(format!(
                "{} blocks but {} degrees",
                self.blocks.len(),
                self.degrees.len()
            )));
        }
        if let Some(&b) = self.blocks.iter().find(|&&b| b as usize >= self.n_blocks) {
            return Err(Error::Invariant(format!("block id {b} >= {}", self.n_blocks)));
        }
        for (r, s, v) in self.edge_counts.iter() {
            if s >= self.n_blocks {
                return Err(Error::Invariant(format!("edge-count cell ({r}, {s}) out of range")));
            }
            if r == s && v % 2 == 1 {
                return Err(Error::OddDiagonal { block: r, value: v });
            }
        }
        let rows = self.edge_counts.row_sums(self.n_blocks);
        for (block, (stubs, row_sum)) in self.block_degree_sums().into_iter().zip(rows).enumerate() {
            if stubs != row_sum {
                return Err(Error::InconsistentParams {
                    block,
                    stubs,
                    row_sum,
                });
            }
        }
        Ok(())
    }

    pub fn total_edges(&self) -> u64 {
        self.edge_counts.total_edges()
    }
}

/// Per-cluster connectivity targets `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityTargets {
    pub lambda: Vec<u64>,
}

/// The two edge-disjoint pieces of a clustered network. Both keep the full
/// vertex universe.
#[derive(Debug, Clone)]
pub struct Subnetworks {
    /// Edges with both endpoints clustered.
    pub clustered: Graph,
    /// Edges with at least one outlier endpoint.
    pub outlier: Graph,
}

pub fn split_subnetworks(g: &Graph, c: &Clustering) -> Result<Subnetworks> {
    check_universe(g, c)?;
    let (mut inner, mut outer) = (Vec::new(), Vec::new());
    for (u, v) in g.edges() {
        let p = (u as u32, v as u32);
        if c.is_outlier(u) || c.is_outlier(v) {
            outer.push(p);
        } else {
            inner.push(p);
        }
    }
    let n = g.n_vertices();
    Ok(Subnetworks {
        clustered: Graph::from_sorted_pairs(n, &inner),
        outlier: Graph::from_sorted_pairs(n, &outer),
    })
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

/// Degrees, blocks and block edge counts of `g` under a total clustering.
pub fn extract_sbm_params(g: &Graph, c: &Clustering) -> Result<SbmParams> {
    check_universe(g, c)?;
    let mut blocks = Vec::with_capacity(g.n_vertices());
    for v in 0..g.n_vertices() {
        blocks.push(c.cluster_of(v).ok_or(Error::UnassignedVertex(v))? as u32);
    }
    let mut edge_counts = EdgeCounts::new();
    for (u, v) in g.edges() {
        let (r, s) = (blocks[u] as usize, blocks[v] as usize);
        edge_counts.add(r, s, if r == s { 2 } else { 1 });
    }
    Ok(SbmParams {
        blocks,
        degrees: g.degrees(),
        edge_counts,
        n_blocks: c.n_clusters(),
    })
}

/// Edge connectivity of each cluster's induced subgraph; 0 for singletons and
/// internally disconnected clusters.
pub fn extract_connectivity_targets(clustered: &Graph, c: &Clustering) -> Result<ConnectivityTargets> {
    check_universe(clustered, c)?;
    let lambda = c
        .clusters()
        .par_iter()
        .map(|members| edge_connectivity(&induced_by_sorted(clustered, members.clone()).graph).cut_size)
        .collect();
    Ok(ConnectivityTargets { lambda })
}

/// Parameters of the outlier subnetwork under the clustering extended with
/// one singleton block per outlier.
pub fn outlier_aux_params(outlier: &Graph, c: &Clustering) -> Result<SbmParams> {
    extract_sbm_params(outlier, &c.with_outlier_singletons())
}
