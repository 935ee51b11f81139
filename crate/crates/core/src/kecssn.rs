//! k-edge-connected spanning subgraphs on a cluster's vertex set.
//!
//! The first `k + 1` vertices (in the configured order) form a clique; every
//! later vertex is joined to exactly `k` previously placed vertices. Any cut
//! either splits the clique, crossing at least `k` clique edges, or leaves the
//! clique on one side, in which case the earliest vertex on the other side
//! brings `k` crossing edges with it. The result is therefore k-edge-connected.
//!
//! Each created edge is charged against the cluster's share of the block-model
//! parameters: both endpoint degrees drop by one and the cluster's diagonal
//! cell by two. A charge that would drive any of the three negative is
//! reverted as a whole; the edge is kept either way.

use rand::seq::index;
use rand::Rng as _;
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::params::SbmParams;
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexOrder {
    /// Decreasing target degree, ties by ascending vertex id.
    #[default]
    DegreeDescending,
    VertexId,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialGraph {
    #[default]
    Clique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborSelection {
    /// Draw without replacement with probability proportional to the
    /// remaining target degree.
    #[default]
    AvailabilityWeighted,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KecssnConfig {
    pub ordering: VertexOrder,
    pub init: InitialGraph,
    pub neighbor_selection: NeighborSelection,
    pub rng_seed: u64,
}

/// One cluster's slice of the parameter budget: remaining target degrees of
/// its members and the remaining diagonal cell `e[l][l]`.
#[derive(Debug, Clone)]
pub struct ParamBudget {
    block: usize,
    members: Vec<u32>,
    degrees: Vec<u64>,
    internal: u64,
    applied: usize,
    reversed: Vec<(u32, u32)>,
}

impl ParamBudget {
    /// `members` are the parent ids of block `block`.
    pub fn for_cluster(params: &SbmParams, block: usize, members: &[u32]) -> Self {
        let mut members = members.to_vec();
        members.sort_unstable();
        let degrees = members.iter().map(|&v| params.degrees[v as usize]).collect();
        ParamBudget {
            block,
            members,
            degrees,
            internal: params.edge_counts.get(block, block),
            applied: 0,
            reversed: Vec::new(),
        }
    }

    /// Free-standing budget, mostly for tests and tools.
    pub fn from_parts(block: usize, members: &[u32], degrees: &[u64], internal: u64) -> Self {
        let mut pairs: Vec<(u32, u64)> = members.iter().copied().zip(degrees.iter().copied()).collect();
        pairs.sort_unstable();
        ParamBudget {
            block,
            members: pairs.iter().map(|p| p.0).collect(),
            degrees: pairs.iter().map(|p| p.1).collect(),
            internal,
            applied: 0,
            reversed: Vec::new(),
        }
    }

    fn local(&self, v: u32) -> usize {
        self.members
            .binary_search(&v)
            .expect("vertex belongs to the budgeted cluster")
    }

    /// Remaining target degree of `v`.
    pub fn availability(&self, v: u32) -> u64 {
        self.degrees[self.local(v)]
    }

    pub fn internal(&self) -> u64 {
        self.internal
    }

    pub fn degrees(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.members.iter().copied().zip(self.degrees.iter().copied())
    }

    /// Charges edge `(u, v)`. Returns `false` when the charge was reverted.
    pub fn charge_edge(&mut self, u: u32, v: u32) -> bool {
        let (a, b) = (self.local(u), self.local(v));
        // Decrement-then-reverse is equivalent to checking for underflow first.
        if self.degrees[a] >= 1 && self.degrees[b] >= 1 && self.internal >= 2 {
            self.degrees[a] -= 1;
            self.degrees[b] -= 1;
            self.internal -= 2;
            self.applied += 1;
            true
        } else {
            self.reversed.push((u, v));
            false
        }
    }

    pub fn applied(&self) -> usize {
        self.applied
    }

    /// Edges whose charge was reverted.
    pub fn reversals(&self) -> &[(u32, u32)] {
        &self.reversed
    }

    /// Writes the remaining budget back into `params`.
    pub fn commit(&self, params: &mut SbmParams) {
        for (&v, &d) in self.members.iter().zip(&self.degrees) {
            params.degrees[v as usize] = d;
        }
        params.edge_counts.set(self.block, self.block, self.internal);
    }
}

/// Fenwick tree over non-negative integer weights.
struct WeightTree {
    tree: Vec<u64>,
    weights: Vec<u64>,
}

impl WeightTree {
    fn new(len: usize) -> Self {
        WeightTree {
            tree: vec![0; len + 1],
            weights: vec![0; len],
        }
    }

    fn set(&mut self, i: usize, w: u64) {
        let old = self.weights[i];
        if old == w {
            return;
        }
        self.weights[i] = w;
        let mut j = i + 1;
        while j < self.tree.len() {
            self.tree[j] = self.tree[j].wrapping_add(w.wrapping_sub(old));
            j += j & j.wrapping_neg();
        }
    }

    fn prefix(&self, mut end: usize) -> u64 {
        let mut s = 0u64;
        while end > 0 {
            s = s.wrapping_add(self.tree[end]);
            end -= end & end.wrapping_neg();
        }
        s
    }

    /// Smallest index whose inclusive prefix sum exceeds `target`.
    fn find(&self, mut target: u64) -> usize {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

/// Draws `k` distinct indices from `[0, limit)` of `tree`, weight-proportional
/// without replacement. Once no positive weight remains, the rest are uniform
/// over the unchosen indices. Weights are restored before returning.
fn draw_weighted(tree: &mut WeightTree, limit: usize, k: usize, rng: &mut Rng) -> Vec<usize> {
    debug_assert!(k <= limit);
    let mut chosen = Vec::with_capacity(k);
    let mut saved = Vec::with_capacity(k);
    while chosen.len() < k {
        let total = tree.prefix(limit);
        if total == 0 {
            break;
        }
        let i = tree.find(rng.gen_range(0..total));
        debug_assert!(i < limit && tree.weights[i] > 0);
        saved.push((i, tree.weights[i]));
        tree.set(i, 0);
        chosen.push(i);
    }
    while chosen.len() < k {
        let i = rng.gen_range(0..limit);
        if !chosen.contains(&i) {
            chosen.push(i);
        }
    }
    for (i, w) in saved {
        tree.set(i, w);
    }
    chosen
}

/// `k` distinct candidates, drawn with probability proportional to
/// `availability` (parallel to `candidates`), falling back to uniform picks
/// when positive availability runs out.
pub fn select_neighbors(candidates: &[u32], k: usize, availability: &[u64], rng: &mut Rng) -> Result<Vec<u32>> {
    if candidates.len() < k {
        return Err(Error::NotEnoughCandidates {
            k,
            available: candidates.len(),
        });
    }
    assert_eq!(candidates.len(), availability.len());
    if k == candidates.len() {
        return Ok(candidates.to_vec());
    }
    let mut tree = WeightTree::new(candidates.len());
    for (i, &a) in availability.iter().enumerate() {
        tree.set(i, a);
    }
    Ok(draw_weighted(&mut tree, candidates.len(), k, rng)
        .into_iter()
        .map(|i| candidates[i])
        .collect())
}

fn processing_order(vertices: &[u32], budget: &ParamBudget, ordering: VertexOrder, rng: &mut Rng) -> Vec<u32> {
    let mut order = vertices.to_vec();
    match ordering {
        VertexOrder::DegreeDescending => {
            order.sort_unstable_by_key(|&v| (std::cmp::Reverse(budget.availability(v)), v));
        }
        VertexOrder::VertexId => order.sort_unstable(),
        VertexOrder::Random => {
            order.sort_unstable();
            order.shuffle(rng);
        }
    }
    order
}

/// Builds a spanning subgraph on `vertices` with edge connectivity at least
/// `k`, charging every edge to `budget`. Edges are returned as `(min, max)`
/// pairs of the given vertex ids.
pub fn gen_kecssn(
    vertices: &[u32],
    k: usize,
    budget: &mut ParamBudget,
    cfg: &KecssnConfig,
    rng: &mut Rng,
) -> Result<Vec<(u32, u32)>> {
    let n = vertices.len();
    if k == 0 || n <= 1 {
        return Ok(Vec::new());
    }
    if k > n - 1 {
        return Err(Error::KTooLarge { k, n_vertices: n });
    }
    let order = processing_order(vertices, budget, cfg.ordering, rng);
    let mut edges = Vec::with_capacity(k * (k + 1) / 2 + (n - k - 1) * k);
    let push = |edges: &mut Vec<(u32, u32)>, budget: &mut ParamBudget, a: u32, b: u32| {
        budget.charge_edge(a, b);
        edges.push((a.min(b), a.max(b)));
    };

    match cfg.init {
        InitialGraph::Clique => {
            for i in 0..=k {
                for j in i + 1..=k {
                    push(&mut edges, budget, order[i], order[j]);
                }
            }
        }
    }

    let mut tree = WeightTree::new(n);
    if cfg.neighbor_selection == NeighborSelection::AvailabilityWeighted {
        for (i, &v) in order.iter().enumerate().take(k + 1) {
            tree.set(i, budget.availability(v));
        }
    }
    for i in k + 1..n {
        let v = order[i];
        let picks = match cfg.neighbor_selection {
            NeighborSelection::AvailabilityWeighted => draw_weighted(&mut tree, i, k, rng),
            NeighborSelection::Uniform => index::sample(rng, i, k).into_vec(),
        };
        for p in picks {
            let u = order[p];
            push(&mut edges, budget, v, u);
            if cfg.neighbor_selection == NeighborSelection::AvailabilityWeighted {
                tree.set(p, budget.availability(u));
            }
        }
        if cfg.neighbor_selection == NeighborSelection::AvailabilityWeighted {
            tree.set(i, budget.availability(v));
        }
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::mincut::edge_connectivity;
    use crate::rng::{stream, Domain};
    use std::collections::BTreeSet;

    fn rng(i: u64) -> Rng {
        stream(99, Domain::Kecssn, i)
    }

    fn local_graph(vertices: &[u32], edges: &[(u32, u32)]) -> Graph {
        let e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                (
                    vertices.iter().position(|&x| x == a).unwrap(),
                    vertices.iter().position(|&x| x == b).unwrap(),
                )
            })
            .collect();
        Graph::from_edges(vertices.len(), &e).unwrap()
    }

    fn generous(vertices: &[u32]) -> ParamBudget {
        ParamBudget::from_parts(0, vertices, &vec![100; vertices.len()], 10_000)
    }

    #[test]
    fn four_vertices_k3_is_a_clique() {
        let vs = [10, 11, 12, 13];
        let mut b = generous(&vs);
        let e = gen_kecssn(&vs, 3, &mut b, &KecssnConfig::default(), &mut rng(0)).unwrap();
        assert_eq!(e.len(), 6);
        assert_eq!(edge_connectivity(&local_graph(&vs, &e)).cut_size, 3);
    }

    #[test]
    fn k1_gives_a_spanning_tree() {
        let vs = [0, 1, 2, 3, 4];
        let mut b = generous(&vs);
        let e = gen_kecssn(&vs, 1, &mut b, &KecssnConfig::default(), &mut rng(1)).unwrap();
        assert_eq!(e.len(), 4);
        assert!(edge_connectivity(&local_graph(&vs, &e)).cut_size >= 1);
    }

    #[test]
    fn degenerate_inputs() {
        let mut b = generous(&[0, 1, 2]);
        assert!(gen_kecssn(&[0, 1, 2], 0, &mut b, &KecssnConfig::default(), &mut rng(2)).unwrap().is_empty());
        assert!(matches!(
            gen_kecssn(&[0, 1, 2], 3, &mut b, &KecssnConfig::default(), &mut rng(2)),
            Err(Error::KTooLarge { k: 3, n_vertices: 3 })
        ));
        let mut b = generous(&[5]);
        assert!(gen_kecssn(&[5], 2, &mut b, &KecssnConfig::default(), &mut rng(2)).unwrap().is_empty());
    }

    #[test]
    fn charges_and_reversals_keep_rows_consistent() {
        // Degrees 3,1,1,1 inside one block with e = 6 (three internal edges).
        let vs = [0, 1, 2, 3];
        let mut b = ParamBudget::from_parts(0, &vs, &[3, 1, 1, 1], 6);
        let e = gen_kecssn(&vs, 2, &mut b, &KecssnConfig::default(), &mut rng(3)).unwrap();
        assert_eq!(e.len(), 3 + 2);
        let remaining: u64 = b.degrees().map(|(_, d)| d).sum();
        assert_eq!(remaining, b.internal());
        assert_eq!(b.applied() + b.reversals().len(), e.len());
        assert!(!b.reversals().is_empty());
    }

    #[test]
    fn degree_order_ties_break_by_id() {
        let vs = [4, 2, 9, 7];
        let b = ParamBudget::from_parts(0, &vs, &[1, 5, 5, 2], 100);
        let order = processing_order(&vs, &b, VertexOrder::DegreeDescending, &mut rng(0));
        assert_eq!(order, vec![2, 9, 7, 4]);
    }

    #[test]
    fn weighted_selection_edge_cases() {
        let c = [1, 2, 3, 4];
        let all = select_neighbors(&c, 4, &[0, 0, 0, 0], &mut rng(4)).unwrap();
        assert_eq!(all, c.to_vec());
        for s in 0..200 {
            let pick = select_neighbors(&c, 3, &[5, 0, 2, 1], &mut rng(s)).unwrap();
            let set: BTreeSet<u32> = pick.into_iter().collect();
            assert_eq!(set, BTreeSet::from([1, 3, 4]));
        }
        assert!(matches!(
            select_neighbors(&c, 5, &[1; 4], &mut rng(0)),
            Err(Error::NotEnoughCandidates { k: 5, available: 4 })
        ));
        // Fallback: only one positive weight but two picks needed.
        for s in 0..50 {
            let pick = select_neighbors(&c, 2, &[0, 7, 0, 0], &mut rng(s)).unwrap();
            assert_eq!(pick[0], 2);
            assert_ne!(pick[1], 2);
        }
    }

    #[test]
    fn equal_weights_give_uniform_subsets() {
        // Chi-square over the C(5,2) = 10 subsets, 10k draws, 9 d.o.f.
        let c = [0, 1, 2, 3, 4];
        let mut counts = std::collections::BTreeMap::new();
        let mut r = rng(5);
        let draws = 10_000;
        for _ in 0..draws {
            let mut p = select_neighbors(&c, 2, &[3; 5], &mut r).unwrap();
            p.sort_unstable();
            *counts.entry(p).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 10);
        let expected = draws as f64 / 10.0;
        let chi2: f64 = counts.values().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
        // 0.999 quantile of chi-square with 9 degrees of freedom.
        assert!(chi2 < 27.877, "chi2 = {chi2}");
    }

    #[test]
    fn weights_are_proportional() {
        let c = [0, 1];
        let mut r = rng(6);
        let hits = (0..20_000)
            .filter(|_| select_neighbors(&c, 1, &[1, 3], &mut r).unwrap()[0] == 1)
            .count();
        let frac = hits as f64 / 20_000.0;
        assert!((frac - 0.75).abs() < 0.02, "{frac}");
    }

    #[test]
    fn deterministic_under_seed() {
        let vs: Vec<u32> = (0..30).collect();
        let cfg = KecssnConfig::default();
        let run = |s| {
            let mut b = ParamBudget::from_parts(0, &vs, &(0..30).map(|i| i % 7).collect::<Vec<u64>>(), 60);
            gen_kecssn(&vs, 3, &mut b, &cfg, &mut rng(s)).unwrap()
        };
        assert_eq!(run(1), run(1));
    }

    #[test]
    fn every_config_is_k_edge_connected() {
        let vs: Vec<u32> = (0..25).collect();
        for ordering in [VertexOrder::DegreeDescending, VertexOrder::VertexId, VertexOrder::Random] {
            for neighbor_selection in [NeighborSelection::AvailabilityWeighted, NeighborSelection::Uniform] {
                let cfg = KecssnConfig {
                    ordering,
                    neighbor_selection,
                    ..Default::default()
                };
                for k in 1..6 {
                    let mut b = ParamBudget::from_parts(0, &vs, &[4; 25], 50);
                    let e = gen_kecssn(&vs, k, &mut b, &cfg, &mut rng(k as u64)).unwrap();
                    let g = local_graph(&vs, &e);
                    assert_eq!(g.n_edges(), k * (k + 1) / 2 + (25 - k - 1) * k);
                    assert!(edge_connectivity(&g).cut_size >= k as u64);
                }
            }
        }
    }
}
