//! Final degree correction: add edges between vertices that are still short of
//! their target degree.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashSet};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{graph_union, Graph};
use crate::rng::Rng;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionReport {
    /// Added edges, in the order they were added.
    pub added: Vec<(u32, u32)>,
    pub deficit_before: u64,
    pub residual_deficit: u64,
}

/// Strategy for adding edges between deficit vertices. Implementations must
/// only add edges, never create self-loops or duplicates, and only join two
/// vertices that both have positive deficit at the moment of addition.
pub trait DegreeCorrection {
    fn correct(&self, partial: &Graph, target: &[u64], rng: &mut Rng) -> Result<(Graph, CorrectionReport)>;
}

/// Repeatedly joins the vertex with the largest deficit to the largest-deficit
/// vertex it is not yet adjacent to. Equal deficits are ordered by a random
/// key drawn once per vertex.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyMaxDeficit;

/// `Σ_v max(0, target(v) − deg(v))`.
pub fn total_deficit(g: &Graph, target: &[u64]) -> u64 {
    (0..g.n_vertices())
        .map(|v| target[v].saturating_sub(g.degree(v) as u64))
        .sum()
}

impl DegreeCorrection for GreedyMaxDeficit {
    fn correct(&self, partial: &Graph, target: &[u64], rng: &mut Rng) -> Result<(Graph, CorrectionReport)> {
        let n = partial.n_vertices();
        if target.len() != n {
            return Err(Error::VertexUniverseMismatch {
                left: n,
                right: target.len(),
            });
        }
        let mut deficit: Vec<u64> = (0..n)
            .map(|v| target[v].saturating_sub(partial.degree(v) as u64))
            .collect();
        let deficit_before = deficit.iter().sum();
        let tie: Vec<u64> = (0..n).map(|_| rng.gen()).collect();

        let mut queue: BTreeSet<(Reverse<u64>, u64, u32)> = (0..n)
            .filter(|&v| deficit[v] > 0)
            .map(|v| (Reverse(deficit[v]), tie[v], v as u32))
            .collect();
        let mut added_set: HashSet<(u32, u32)> = HashSet::new();
        let mut added = Vec::new();

        while queue.len() >= 2 {
            let head = *queue.iter().next().expect("non-empty");
            let u = head.2;
            let partner = queue.iter().skip(1).find(|&&(_, _, v)| {
                let key = (u.min(v), u.max(v));
                !partial.has_edge(u as usize, v as usize) && !added_set.contains(&key)
            });
            let Some(&entry) = partner else {
                // Adjacent to every other deficit vertex; that only gets worse.
                queue.remove(&head);
                continue;
            };
            let v = entry.2;
            queue.remove(&head);
            queue.remove(&entry);
            for w in [u, v] {
                let wi = w as usize;
                deficit[wi] -= 1;
                if deficit[wi] > 0 {
                    queue.insert((Reverse(deficit[wi]), tie[wi], w));
                }
            }
            let key = (u.min(v), u.max(v));
            added_set.insert(key);
            added.push(key);
        }

        let mut pairs = added.clone();
        pairs.sort_unstable();
        let extra = Graph::from_sorted_pairs(n, &pairs);
        let corrected = graph_union(partial, &extra)?;
        let report = CorrectionReport {
            residual_deficit: total_deficit(&corrected, target),
            added,
            deficit_before,
        };
        Ok((corrected, report))
    }
}

/// Degree correction with the default greedy policy.
pub fn stage3_degree_correction(partial: &Graph, target: &[u64], rng: &mut Rng) -> Result<(Graph, CorrectionReport)> {
    GreedyMaxDeficit.correct(partial, target, rng)
}
