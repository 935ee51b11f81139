//! Network statistics for comparing an empirical (network, clustering) pair
//! with a synthetic one.

mod distance;
mod spectral;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{connected_components, induced_by_sorted, Graph};
use crate::mincut::edge_connectivity;
use crate::scalar::Real;

pub use distance::{distances, rmse, DistanceEntry, DistanceReport, Metric};
pub use spectral::{char_time, CharTime, CharTimeOptions};

/// One of the eight comparison statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stat {
    PseudoDiameter,
    CharTime,
    GlobalCcoeff,
    Degree,
    MixingMus,
    Mincuts,
    CEdge,
    ODeg,
}

impl Stat {
    pub const ALL: [Stat; 8] = [
        Stat::PseudoDiameter,
        Stat::CharTime,
        Stat::GlobalCcoeff,
        Stat::Degree,
        Stat::MixingMus,
        Stat::Mincuts,
        Stat::CEdge,
        Stat::ODeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stat::PseudoDiameter => "pseudo_diameter",
            Stat::CharTime => "char_time",
            Stat::GlobalCcoeff => "global_ccoeff",
            Stat::Degree => "degree",
            Stat::MixingMus => "mixing_mus",
            Stat::Mincuts => "mincuts",
            Stat::CEdge => "c_edge",
            Stat::ODeg => "o_deg",
        }
    }

    pub fn metric(self) -> Metric {
        match self {
            Stat::PseudoDiameter | Stat::CharTime => Metric::Sd,
            Stat::GlobalCcoeff => Metric::Srd,
            _ => Metric::Rmse,
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Stat::ALL
            .into_iter()
            .find(|st| st.name() == s.trim())
            .ok_or_else(|| format!("unknown statistic `{s}`"))
    }
}

/// Subset of statistics to compute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatSelection(BTreeSet<Stat>);

impl StatSelection {
    pub fn all() -> Self {
        StatSelection(Stat::ALL.into_iter().collect())
    }

    pub fn only(stats: impl IntoIterator<Item = Stat>) -> Self {
        StatSelection(stats.into_iter().collect())
    }

    pub fn contains(&self, s: Stat) -> bool {
        self.0.contains(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = Stat> + '_ {
        self.0.iter().copied()
    }
}

impl Default for StatSelection {
    fn default() -> Self {
        Self::all()
    }
}

/// Comma-separated names, or `all`.
impl FromStr for StatSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.trim() == "all" {
            return Ok(Self::all());
        }
        let set = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(Stat::from_str)
            .collect::<std::result::Result<BTreeSet<_>, _>>()?;
        if set.is_empty() {
            return Err("empty statistic selection".into());
        }
        Ok(StatSelection(set))
    }
}

#[derive(Debug, Clone)]
pub struct StatsOptions<F> {
    pub selection: StatSelection,
    pub char_time: CharTimeOptions<F>,
    /// Drop outliers from `mixing_mus` instead of treating them as singletons.
    pub exclude_outliers_from_mixing: bool,
}

impl<F: Real> Default for StatsOptions<F> {
    fn default() -> Self {
        StatsOptions {
            selection: StatSelection::all(),
            char_time: CharTimeOptions::default(),
            exclude_outliers_from_mixing: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoDiameter {
    pub value: usize,
    pub source: usize,
    pub target: usize,
    /// Vertices in the component the estimate was taken on.
    pub component_size: usize,
    /// False when the graph has more than one component.
    pub connected: bool,
}

/// Statistics of one (network, clustering) pair. Skipped statistics are `None`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct StatReport<F> {
    pub pseudo_diameter: Option<F>,
    pub char_time: Option<F>,
    pub global_ccoeff: Option<F>,
    pub degree: Option<Vec<F>>,
    pub mixing_mus: Option<Vec<F>>,
    pub mincuts: Option<Vec<F>>,
    pub c_edge: Option<Vec<F>>,
    pub o_deg: Option<Vec<F>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub char_time_converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph_connected: Option<bool>,
}

impl<F: Real> StatReport<F> {
    pub fn scalar(&self, s: Stat) -> Option<F> {
        match s {
            Stat::PseudoDiameter => self.pseudo_diameter,
            Stat::CharTime => self.char_time,
            Stat::GlobalCcoeff => self.global_ccoeff,
            _ => None,
        }
    }

    pub fn sequence(&self, s: Stat) -> Option<&[F]> {
        match s {
            Stat::Degree => self.degree.as_deref(),
            Stat::MixingMus => self.mixing_mus.as_deref(),
            Stat::Mincuts => self.mincuts.as_deref(),
            Stat::CEdge => self.c_edge.as_deref(),
            Stat::ODeg => self.o_deg.as_deref(),
            _ => None,
        }
    }
}

fn bfs(g: &Graph, source: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) -> u32 {
    dist.fill(u32::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        ecc = ecc.max(du);
        for &w in g.neighbors(u) {
            let w = w as usize;
            if dist[w] == u32::MAX {
                dist[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
    ecc
}

/// Iterated double sweep on the largest component, starting from its lowest
/// id. Among the farthest vertices the next source is the one with the
/// smallest degree, then the smallest id.
pub fn pseudo_diameter(g: &Graph) -> Result<PseudoDiameter> {
    let n = g.n_vertices();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let comps = connected_components(g);
    let label = comps.largest().expect("non-empty");
    let start = comps.labels.iter().position(|&l| l == label).expect("label in use");
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();

    let farthest = |dist: &[u32], ecc: u32| {
        (0..n)
            .filter(|&v| dist[v] == ecc)
            .min_by_key(|&v| (g.degree(v), v))
            .expect("eccentricity is attained")
    };
    let mut best = bfs(g, start, &mut dist, &mut queue);
    let mut ends = (start, farthest(&dist, best));
    loop {
        let from = ends.1;
        let ecc = bfs(g, from, &mut dist, &mut queue);
        if ecc <= best {
            break;
        }
        best = ecc;
        ends = (from, farthest(&dist, ecc));
    }
    Ok(PseudoDiameter {
        value: best as usize,
        source: ends.0,
        target: ends.1,
        component_size: comps.sizes[label as usize],
        connected: comps.count() == 1,
    })
}

/// Unordered paths of length two centred at each vertex.
pub fn wedge_count(g: &Graph) -> u64 {
    (0..g.n_vertices())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// Triangles by forward adjacency: each edge is oriented from the endpoint
/// with the smaller (degree, id) rank.
pub fn triangle_count(g: &Graph) -> u64 {
    let n = g.n_vertices();
    let rank = |v: usize| (g.degree(v), v);
    let forward: Vec<Vec<u32>> = (0..n)
        .map(|u| {
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&w| rank(w as usize) > rank(u))
                .collect()
        })
        .collect();
    let mut total = 0u64;
    for u in 0..n {
        for &v in &forward[u] {
            let (a, b) = (&forward[u], &forward[v as usize]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        total += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    total
}

/// `3 · triangles / wedges`, or 0 without wedges.
pub fn global_ccoeff<F: Real>(g: &Graph) -> F {
    let wedges = wedge_count(g);
    if wedges == 0 {
        return F::zero();
    }
    F::of_u64(3 * triangle_count(g)) / F::of_u64(wedges)
}

/// Fraction of each vertex's neighbors outside its cluster. Outliers count as
/// singleton clusters; with `exclude_outliers` they are left out of the
/// sequence entirely.
pub fn mixing_mus<F: Real>(g: &Graph, c: &Clustering, exclude_outliers: bool) -> Result<Vec<F>> {
    check_universe(g, c)?;
    let mut out = Vec::with_capacity(g.n_vertices());
    for v in 0..g.n_vertices() {
        let own = c.cluster_of(v);
        if own.is_none() && exclude_outliers {
            continue;
        }
        let deg = g.degree(v);
        if deg == 0 {
            out.push(F::zero());
            continue;
        }
        let external = match own {
            None => deg,
            Some(k) => g
                .neighbors(v)
                .iter()
                .filter(|&&w| c.cluster_of(w as usize) != Some(k))
                .count(),
        };
        out.push(F::of_usize(external) / F::of_usize(deg));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClusterStats {
    pub mincuts: Vec<u64>,
    pub c_edge: Vec<u64>,
}

/// Edge connectivity and internal edge count of each cluster's induced
/// subgraph, in cluster order.
pub fn cluster_stats(g: &Graph, c: &Clustering) -> Result<ClusterStats> {
    check_universe(g, c)?;
    let per: Vec<(u64, u64)> = c
        .clusters()
        .par_iter()
        .map(|members| {
            let h = induced_by_sorted(g, members.clone()).graph;
            (edge_connectivity(&h).cut_size, h.n_edges() as u64)
        })
        .collect();
    let (mincuts, c_edge) = per.into_iter().unzip();
    Ok(ClusterStats { mincuts, c_edge })
}

/// Degree of every outlier, by ascending vertex id.
pub fn outlier_degrees(g: &Graph, c: &Clustering) -> Result<Vec<u64>> {
    check_universe(g, c)?;
    Ok(c.outliers().into_iter().map(|v| g.degree(v) as u64).collect())
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

fn to_real<F: Real>(xs: &[u64]) -> Vec<F> {
    xs.iter().map(|&x| F::of_u64(x)).collect()
}

/// Computes the selected statistics. A graph without edges has no relaxation
/// time; `char_time` is then left unset.
pub fn compute_report<F: Real>(g: &Graph, c: &Clustering, opts: &StatsOptions<F>) -> Result<StatReport<F>> {
    check_universe(g, c)?;
    let sel = &opts.selection;
    let mut r = StatReport::<F>::default();
    if sel.contains(Stat::PseudoDiameter) && g.n_vertices() > 0 {
        let pd = pseudo_diameter(g)?;
        r.pseudo_diameter = Some(F::of_usize(pd.value));
        r.graph_connected = Some(pd.connected);
    }
    if sel.contains(Stat::CharTime) {
        match char_time::<F>(g, &opts.char_time) {
            Ok(t) => {
                if !t.converged {
                    log::warn!("char_time stopped after {} iterations without converging", t.iterations);
                }
                r.char_time = Some(t.value);
                r.char_time_converged = Some(t.converged);
            }
            Err(Error::NoEdges | Error::EmptyGraph) => {}
            Err(e) => return Err(e),
        }
    }
    if sel.contains(Stat::GlobalCcoeff) {
        r.global_ccoeff = Some(global_ccoeff(g));
    }
    if sel.contains(Stat::Degree) {
        r.degree = Some(to_real(&g.degrees()));
    }
    if sel.contains(Stat::MixingMus) {
        r.mixing_mus = Some(mixing_mus(g, c, opts.exclude_outliers_from_mixing)?);
    }
    if sel.contains(Stat::Mincuts) || sel.contains(Stat::CEdge) {
        let cs = cluster_stats(g, c)?;
        if sel.contains(Stat::Mincuts) {
            r.mincuts = Some(to_real(&cs.mincuts));
        }
        if sel.contains(Stat::CEdge) {
            r.c_edge = Some(to_real(&cs.c_edge));
        }
    }
    if sel.contains(Stat::ODeg) {
        r.o_deg = Some(to_real(&outlier_degrees(g, c)?));
    }
    Ok(r)
}
