//! Global minimum edge cut on unit-weight undirected graphs.
//!
//! [`edge_connectivity`] answers cheaply when it can (disconnected input,
//! a degree-one vertex, a bridge) and otherwise contracts the graph along
//! maximum-adjacency orderings in the manner of Nagamochi and Ibaraki: every
//! edge whose scan value reaches the best known cut joins two vertices that
//! no smaller cut can separate, so all such edges are contracted at once.
//! [`stoer_wagner_mincut`] is kept as an independent oracle.

use std::cmp::Reverse;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BinaryHeap, HashMap};
use std::hash::BuildHasherDefault;

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};

/// Largest graph [`brute_force_mincut`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub cut_size: u64,
    /// One side of a minimum cut, ascending. `None` when `n < 2`.
    pub witness: Option<Vec<usize>>,
}

impl CutResult {
    fn trivial() -> Self {
        CutResult {
            cut_size: 0,
            witness: None,
        }
    }
}

/// Exact edge connectivity. Graphs with fewer than two vertices report 0.
pub fn edge_connectivity(g: &Graph) -> CutResult {
    let n = g.n_vertices();
    if n < 2 {
        return CutResult::trivial();
    }
    let comps = connected_components(g);
    if comps.count() > 1 {
        return CutResult {
            cut_size: 0,
            witness: Some(comps.members(comps.labels[0])),
        };
    }
    let (min_v, min_deg) = (0..n)
        .map(|v| (v, g.degree(v)))
        .min_by_key(|&(v, d)| (d, v))
        .expect("n >= 2");
    if min_deg == 1 {
        return CutResult {
            cut_size: 1,
            witness: Some(vec![min_v]),
        };
    }
    if let Some(side) = bridge_side(g) {
        return CutResult {
            cut_size: 1,
            witness: Some(side),
        };
    }
    contraction_mincut(g, 2, (min_deg as u64, vec![min_v]))
}

/// Plain Stoer–Wagner without shortcuts beyond the component check.
pub fn stoer_wagner_mincut(g: &Graph) -> CutResult {
    let n = g.n_vertices();
    if n < 2 {
        return CutResult::trivial();
    }
    let comps = connected_components(g);
    if comps.count() > 1 {
        return CutResult {
            cut_size: 0,
            witness: Some(comps.members(comps.labels[0])),
        };
    }
    let (min_v, min_deg) = (0..n)
        .map(|v| (v, g.degree(v)))
        .min_by_key(|&(v, d)| (d, v))
        .expect("n >= 2");
    stoer_wagner(g, 0, (min_deg as u64, vec![min_v]))
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] as usize != v {
            let up = self.0[self.0[v] as usize];
            self.0[v] = up;
            v = up as usize;
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo as u32;
        }
    }
}

/// Contraction rounds on a connected graph. Stops early once the best cut
/// equals `lower_bound`; `initial` is a known cut.
fn contraction_mincut(g: &Graph, lower_bound: u64, initial: (u64, Vec<usize>)) -> CutResult {
    let n = g.n_vertices();
    let (mut best, mut best_side) = initial;
    let mut adj: Vec<Vec<(u32, u64)>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| (w, 1u64)).collect())
        .collect();
    let mut groups: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    let mut heap = BinaryHeap::new();

    while adj.len() > 1 && best > lower_bound {
        let m = adj.len();
        let mut r = vec![0u64; m];
        let mut done = vec![false; m];
        let mut uf = UnionFind::new(m);
        heap.clear();
        heap.push((0u64, Reverse(0u32)));
        while let Some((k, Reverse(v))) = heap.pop() {
            let vi = v as usize;
            if done[vi] || k != r[vi] {
                continue;
            }
            done[vi] = true;
            for &(w, wt) in &adj[vi] {
                let wi = w as usize;
                if done[wi] {
                    continue;
                }
                r[wi] += wt;
                if r[wi] >= best {
                    uf.union(vi, wi);
                }
                heap.push((r[wi], Reverse(w)));
            }
        }

        let mut label = vec![u32::MAX; m];
        let mut map = vec![0u32; m];
        let mut next = 0u32;
        for (v, slot) in map.iter_mut().enumerate() {
            let root = uf.find(v);
            if label[root] == u32::MAX {
                label[root] = next;
                next += 1;
            }
            *slot = label[root];
        }
        // The last scanned vertex always merges, so every round shrinks.
        debug_assert!((next as usize) < m);

        let mut merged: Vec<Vec<u32>> = vec![Vec::new(); next as usize];
        for (v, grp) in groups.into_iter().enumerate() {
            merged[map[v] as usize].extend(grp);
        }
        groups = merged;

        let mut edges: Vec<(u32, u32, u64)> = Vec::new();
        for (v, nbrs) in adj.iter().enumerate() {
            for &(w, wt) in nbrs {
                let (a, b) = (map[v], map[w as usize]);
                if (v as u32) < w && a != b {
                    edges.push((a.min(b), a.max(b), wt));
                }
            }
        }
        edges.sort_unstable();
        let mut next_adj: Vec<Vec<(u32, u64)>> = vec![Vec::new(); next as usize];
        let mut i = 0;
        while i < edges.len() {
            let (a, b) = (edges[i].0, edges[i].1);
            let mut wt = 0;
            while i < edges.len() && edges[i].0 == a && edges[i].1 == b {
                wt += edges[i].2;
                i += 1;
            }
            next_adj[a as usize].push((b, wt));
            next_adj[b as usize].push((a, wt));
        }
        adj = next_adj;
        if adj.len() < 2 {
            break;
        }

        for (v, nbrs) in adj.iter().enumerate() {
            let deg: u64 = nbrs.iter().map(|p| p.1).sum();
            if deg < best {
                best = deg;
                let mut side: Vec<usize> = groups[v].iter().map(|&x| x as usize).collect();
                side.sort_unstable();
                best_side = side;
            }
        }
    }

    CutResult {
        cut_size: best,
        witness: Some(best_side),
    }
}

/// Subtree hanging below some bridge of a connected graph, if any bridge
/// exists. Iterative Tarjan low-link.
fn bridge_side(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n_vertices();
    let mut tin = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut tout = vec![0u32; n];
    let mut timer = 0u32;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    tin[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut bridge_child = None;
    while let Some(top) = stack.last_mut() {
        let (v, parent) = (top.0, top.1);
        let nbrs = g.neighbors(v);
        if top.2 < nbrs.len() {
            let w = nbrs[top.2] as usize;
            top.2 += 1;
            if w == parent {
                continue;
            }
            if tin[w] == u32::MAX {
                tin[w] = timer;
                low[w] = timer;
                timer += 1;
                stack.push((w, v, 0));
            } else {
                low[v] = low[v].min(tin[w]);
            }
        } else {
            tout[v] = timer - 1;
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if low[v] > tin[parent] && bridge_child.is_none() {
                    bridge_child = Some(v);
                }
            }
        }
    }
    let c = bridge_child?;
    let (lo, hi) = (tin[c], tout[c]);
    let mut side: Vec<usize> = (0..n).filter(|&v| tin[v] >= lo && tin[v] <= hi).collect();
    side.sort_unstable();
    Some(side)
}

type Adjacency = HashMap<u32, u64, BuildHasherDefault<DefaultHasher>>;

/// Stoer–Wagner with an early exit once the best cut equals `lower_bound`.
/// `initial` is a known cut used as the starting upper bound.
fn stoer_wagner(g: &Graph, lower_bound: u64, initial: (u64, Vec<usize>)) -> CutResult {
    let n = g.n_vertices();
    let mut adj: Vec<Adjacency> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| (w, 1u64)).collect())
        .collect();
    let mut groups: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    let mut active: Vec<u32> = (0..n as u32).collect();
    let mut pos: Vec<usize> = (0..n).collect();

    let (mut best, mut best_side) = initial;
    let mut key = vec![0u64; n];
    let mut added = vec![false; n];
    let mut heap = BinaryHeap::new();

    while active.len() > 1 && best > lower_bound {
        for &v in &active {
            key[v as usize] = 0;
            added[v as usize] = false;
        }
        heap.clear();
        heap.push((0u64, Reverse(active[0])));
        let mut prev = u32::MAX;
        let mut last = u32::MAX;
        let mut last_key = 0;
        let mut count = 0;
        while let Some((k, Reverse(v))) = heap.pop() {
            let vi = v as usize;
            if added[vi] || k != key[vi] {
                continue;
            }
            added[vi] = true;
            prev = last;
            last = v;
            last_key = k;
            count += 1;
            if count == active.len() {
                break;
            }
            for (&w, &wt) in &adj[vi] {
                let wi = w as usize;
                if !added[wi] {
                    key[wi] += wt;
                    heap.push((key[wi], Reverse(w)));
                }
            }
        }
        debug_assert_eq!(count, active.len());

        if last_key < best {
            best = last_key;
            let mut side: Vec<usize> = groups[last as usize].iter().map(|&v| v as usize).collect();
            side.sort_unstable();
            best_side = side;
        }

        // Merge `last` into `prev`.
        let (s, t) = (prev as usize, last as usize);
        let t_adj = std::mem::take(&mut adj[t]);
        for (w, wt) in t_adj {
            let wi = w as usize;
            adj[wi].remove(&last);
            if wi == s {
                continue;
            }
            *adj[s].entry(w).or_insert(0) += wt;
            *adj[wi].entry(prev).or_insert(0) += wt;
        }
        let moved = std::mem::take(&mut groups[t]);
        groups[s].extend(moved);
        let p = pos[t];
        active.swap_remove(p);
        if p < active.len() {
            pos[active[p] as usize] = p;
        }
    }

    CutResult {
        cut_size: best,
        witness: Some(best_side),
    }
}

/// Exhaustive minimum over all `2^(n-1) - 1` proper bipartitions.
pub fn brute_force_mincut(g: &Graph) -> Result<CutResult> {
    let n = g.n_vertices();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if n < 2 {
        return Ok(CutResult::trivial());
    }
    let edges: Vec<(usize, usize)> = g.edge_vec();
    let mut best = u64::MAX;
    let mut best_mask = 0u32;
    // Vertex n-1 stays on the complement side, so every mask is a distinct
    // proper bipartition.
    for mask in 1u32..(1u32 << (n - 1)) {
        let cut = edges
            .iter()
            .filter(|&&(u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
            .count() as u64;
        if cut < best {
            best = cut;
            best_mask = mask;
        }
    }
    Ok(CutResult {
        cut_size: best,
        witness: Some((0..n).filter(|&v| (best_mask >> v) & 1 == 1).collect()),
    })
}

/// Number of edges of `g` crossing the bipartition `(side, rest)`.
pub fn cut_value(g: &Graph, side: &[usize]) -> u64 {
    let mut inside = vec![false; g.n_vertices()];
    for &v in side {
        inside[v] = true;
    }
    g.edges().filter(|&(u, v)| inside[u] != inside[v]).count() as u64
}
