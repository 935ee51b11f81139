//! Simple undirected graphs in compressed sparse row form, plus the multigraph
//! produced by stub matching.
//!
//! Vertices are dense ids in `[0, n)`. Every neighbor list is sorted, so edge
//! membership is a binary search and iteration order is deterministic.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Simple undirected graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Strict construction: self-loops and repeated pairs (in either
    /// orientation) are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            check_range(u, n)?;
            check_range(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            pairs.push(ordered(u as u32, v as u32));
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }
        Ok(Self::from_sorted_pairs(n, &pairs))
    }

    /// Lenient construction: self-loops and repeated pairs are dropped. Returns
    /// the graph and the number of input pairs discarded.
    pub fn from_edges_coerced(n: usize, edges: &[(usize, usize)]) -> Result<(Self, usize)> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            check_range(u, n)?;
            check_range(v, n)?;
            if u != v {
                pairs.push(ordered(u as u32, v as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let dropped = edges.len() - pairs.len();
        Ok((Self::from_sorted_pairs(n, &pairs), dropped))
    }

    /// Builds from pairs that are already normalized (`u < v`), sorted and
    /// unique. Neighbor lists come out sorted without a per-vertex sort.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in pairs {
            debug_assert!(u < v && (v as usize) < n);
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0u32; 2 * pairs.len()];
        for &(u, v) in pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        Graph { offsets, neighbors }
    }

    pub fn n_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn n_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.offsets.windows(2).map(|w| (w[1] - w[0]) as u64).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n_vertices()).map(|v| self.degree(v)).min()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_vertices()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub(crate) fn sorted_pairs(&self) -> Vec<(u32, u32)> {
        self.edges().map(|(u, v)| (u as u32, v as u32)).collect()
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        MultiGraph {
            n_vertices: self.n_vertices(),
            edges: self.sorted_pairs(),
        }
    }
}

#[inline]
fn ordered(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn check_range(v: usize, n: usize) -> Result<()> {
    if v >= n {
        Err(Error::VertexOutOfRange {
            vertex: v,
            n_vertices: n,
        })
    } else {
        Ok(())
    }
}

/// Strict graph from a bare edge list; the vertex count is one past the largest
/// id mentioned.
pub fn build_graph(edge_pairs: &[(usize, usize)]) -> Result<Graph> {
    let n = edge_pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::from_edges(n, edge_pairs)
}

/// Undirected multigraph: parallel edges and self-loops allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    pub n_vertices: usize,
    pub edges: Vec<(u32, u32)>,
}

impl MultiGraph {
    pub fn new(n_vertices: usize) -> Self {
        MultiGraph {
            n_vertices,
            edges: Vec::new(),
        }
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Stub degrees: a self-loop contributes two to its vertex.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n_vertices];
        for &(u, v) in &self.edges {
            d[u as usize] += 1;
            d[v as usize] += 1;
        }
        d
    }

    pub fn n_self_loops(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }
}

/// Result of collapsing a multigraph to a simple graph.
#[derive(Debug, Clone)]
pub struct Simplified {
    pub graph: Graph,
    /// Self-loops plus redundant parallel copies that were discarded.
    pub excess: usize,
}

/// Drops self-loops and keeps one copy of each set of parallel edges.
pub fn simplify(mg: &MultiGraph) -> Simplified {
    let mut pairs: Vec<(u32, u32)> = mg
        .edges
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| ordered(u, v))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    Simplified {
        excess: mg.edges.len() - pairs.len(),
        graph: Graph::from_sorted_pairs(mg.n_vertices, &pairs),
    }
}

/// Edge-set union over a shared vertex universe.
pub fn graph_union(a: &Graph, b: &Graph) -> Result<Graph> {
    if a.n_vertices() != b.n_vertices() {
        return Err(Error::VertexUniverseMismatch {
            left: a.n_vertices(),
            right: b.n_vertices(),
        });
    }
    let n = a.n_vertices();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut neighbors = Vec::with_capacity(a.neighbors.len().max(b.neighbors.len()));
    offsets.push(0);
    for v in 0..n {
        let (x, y) = (a.neighbors(v), b.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => {
                    neighbors.push(x[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    neighbors.push(y[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    neighbors.push(x[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        neighbors.extend_from_slice(&x[i..]);
        neighbors.extend_from_slice(&y[j..]);
        offsets.push(neighbors.len());
    }
    Ok(Graph { offsets, neighbors })
}

/// Subgraph induced by a vertex subset, with the map back to parent ids.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Local id -> parent id; sorted ascending.
    pub to_parent: Vec<u32>,
}

impl InducedSubgraph {
    pub fn local_id(&self, parent: usize) -> Option<usize> {
        self.to_parent.binary_search(&(parent as u32)).ok()
    }
}

pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<InducedSubgraph> {
    let mut members = Vec::with_capacity(vertices.len());
    for &v in vertices {
        check_range(v, g.n_vertices())?;
        members.push(v as u32);
    }
    members.sort_unstable();
    members.dedup();
    Ok(induced_by_sorted(g, members))
}

/// `members` must be sorted and unique. Cost is proportional to the members'
/// total degree, independent of the parent's size.
pub(crate) fn induced_by_sorted(g: &Graph, members: Vec<u32>) -> InducedSubgraph {
    let mut pairs = Vec::new();
    for (lu, &u) in members.iter().enumerate() {
        for &w in g.neighbors(u as usize) {
            if w > u {
                if let Ok(lw) = members.binary_search(&w) {
                    pairs.push((lu as u32, lw as u32));
                }
            }
        }
    }
    InducedSubgraph {
        graph: Graph::from_sorted_pairs(members.len(), &pairs),
        to_parent: members,
    }
}

/// Component labels numbered in order of each component's smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub labels: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Label of the largest component; ties go to the lower label.
    pub fn largest(&self) -> Option<u32> {
        self.sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i as u32)
    }

    pub fn members(&self, label: u32) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn connected_components(g: &Graph) -> Components {
    let n = g.n_vertices();
    let mut labels = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if labels[s] != u32::MAX {
            continue;
        }
        let label = sizes.len() as u32;
        labels[s] = label;
        queue.push_back(s);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(u) {
                if labels[w as usize] == u32::MAX {
                    labels[w as usize] = label;
                    queue.push_back(w as usize);
                }
            }
        }
        sizes.push(size);
    }
    Components { labels, sizes }
}

pub fn is_connected(g: &Graph) -> bool {
    g.n_vertices() <= 1 || connected_components(g).count() == 1
}
