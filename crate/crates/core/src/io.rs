//! TSV ingestion and atomic output.
//!
//! Edge lists hold one `u v` pair per line and clusterings one `node cluster`
//! pair. Fields may be separated by any whitespace; blank lines and lines
//! starting with `#` are skipped. Node ids are arbitrary tokens. They are
//! mapped to dense ids in sorted order, numerically when every id is an
//! integer and lexicographically otherwise, so a written file re-ingests to
//! the same dense graph.

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// A `(first, second)` token pair with the 1-based line it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record<'a> {
    pub line: usize,
    pub first: &'a str,
    pub second: &'a str,
}

/// Splits `text` into two-column records; `path` is only used in errors.
pub fn parse_pairs<'a>(text: &'a str, path: &Path) -> Result<Vec<Record<'a>>> {
    let mut out = Vec::with_capacity(text.len() / 12);
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut fields = body.split_whitespace();
        let (Some(first), Some(second)) = (fields.next(), fields.next()) else {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("expected two fields, got `{body}`"),
            });
        };
        if let Some(extra) = fields.next() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("unexpected third field `{extra}`"),
            });
        }
        out.push(Record {
            line: line_no,
            first,
            second,
        });
    }
    Ok(out)
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(io_err(path))
}

/// Sorts ids numerically if all of them parse as integers.
pub fn sort_ids<S: AsRef<str> + Ord>(ids: &mut Vec<S>) {
    let numeric: Option<Vec<i128>> = ids.iter().map(|s| s.as_ref().parse::<i128>().ok()).collect();
    match numeric {
        Some(keys) => {
            let mut paired: Vec<(i128, S)> = keys.into_iter().zip(ids.drain(..)).collect();
            paired.sort();
            ids.extend(paired.into_iter().map(|(_, s)| s));
        }
        None => ids.sort(),
    }
}

/// A network and clustering on a shared dense vertex universe.
#[derive(Debug, Clone)]
pub struct Input {
    pub graph: Graph,
    pub clustering: Clustering,
    /// Original node id of each dense vertex.
    pub node_ids: Vec<String>,
    /// Original label of each cluster, in order of first appearance.
    pub cluster_labels: Vec<String>,
    /// Self-loops and duplicate edges dropped under coercion.
    pub dropped_edges: usize,
}

/// Vertex and cluster universe of an earlier [`Input`], used to read a second
/// pair on the same ids.
#[derive(Debug, Clone, Copy)]
pub struct Universe<'a> {
    pub node_ids: &'a [String],
    pub cluster_labels: &'a [String],
}

impl Input {
    pub fn universe(&self) -> Universe<'_> {
        Universe {
            node_ids: &self.node_ids,
            cluster_labels: &self.cluster_labels,
        }
    }
}

/// Dense vertex of every edge endpoint (two per edge record) followed by one
/// per assignment record, plus the id table.
fn resolve_vertices(
    edges: &[Record<'_>],
    edges_path: &Path,
    assignments: &[Record<'_>],
    clustering_path: &Path,
    universe: Option<Universe<'_>>,
) -> Result<(Vec<u32>, Vec<String>)> {
    let tokens = || {
        edges
            .iter()
            .flat_map(|r| [(r, r.first), (r, r.second)])
            .map(|(r, s)| (edges_path, r, s))
            .chain(assignments.iter().map(|r| (clustering_path, r, r.first)))
    };
    let mut dense = Vec::with_capacity(2 * edges.len() + assignments.len());
    if let Some(u) = universe {
        let index: HashMap<&str, u32> = u.node_ids.iter().enumerate().map(|(i, s)| (s.as_str(), i as u32)).collect();
        for (path, r, s) in tokens() {
            let v = index.get(s).copied().ok_or_else(|| Error::Parse {
                path: path.to_path_buf(),
                line: r.line,
                message: format!("node `{s}` is not in the reference network"),
            })?;
            dense.push(v);
        }
        return Ok((dense, u.node_ids.to_vec()));
    }
    if let Some(resolved) = resolve_compact_integers(tokens().map(|t| t.2)) {
        return Ok(resolved);
    }
    // Intern in first-appearance order, then relabel to sorted order.
    let mut index: HashMap<&str, u32> = HashMap::new();
    let mut seen: Vec<&str> = Vec::new();
    for (_, _, s) in tokens() {
        let next = seen.len() as u32;
        let v = *index.entry(s).or_insert_with(|| {
            seen.push(s);
            next
        });
        dense.push(v);
    }
    let mut order: Vec<(&str, u32)> = seen.iter().copied().zip(0..).collect();
    let numeric: Option<Vec<i128>> = seen.iter().map(|s| s.parse().ok()).collect();
    match numeric {
        Some(keys) => order.sort_unstable_by_key(|&(s, p)| (keys[p as usize], s)),
        None => order.sort_unstable(),
    }
    let mut relabel = vec![0u32; order.len()];
    for (rank, &(_, provisional)) in order.iter().enumerate() {
        relabel[provisional as usize] = rank as u32;
    }
    for v in &mut dense {
        *v = relabel[*v as usize];
    }
    Ok((dense, order.into_iter().map(|(s, _)| s.to_owned()).collect()))
}

/// Integer value of `s` if `s` is its canonical spelling, so distinct
/// tokens map to distinct values.
fn canonical_int(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let ok = match digits.as_bytes() {
        [] => false,
        [b'0'] => digits.len() == s.len(),
        [first, ..] => *first != b'0' && digits.bytes().all(|b| b.is_ascii_digit()),
    };
    if ok {
        s.parse().ok()
    } else {
        None
    }
}

/// Table lookup for inputs whose ids are canonical integers in a range not
/// much larger than the token count. Numeric order equals the sorted order
/// used by the general path.
fn resolve_compact_integers<'a>(tokens: impl Iterator<Item = &'a str>) -> Option<(Vec<u32>, Vec<String>)> {
    let values: Vec<i64> = tokens.map(canonical_int).collect::<Option<_>>()?;
    let (&lo, &hi) = (values.iter().min()?, values.iter().max()?);
    let span = usize::try_from(hi.checked_sub(lo)?).ok()?.checked_add(1)?;
    if span > 4 * values.len() + 1024 {
        return None;
    }
    let mut rank = vec![u32::MAX; span];
    for &v in &values {
        rank[(v - lo) as usize] = 0;
    }
    let mut ids = Vec::new();
    for (offset, r) in rank.iter_mut().enumerate() {
        if *r == 0 {
            *r = ids.len() as u32;
            ids.push((lo + offset as i64).to_string());
        }
    }
    Some((values.iter().map(|&v| rank[(v - lo) as usize]).collect(), ids))
}

/// Builds an [`Input`] from parsed records. Nodes that only appear in the
/// clustering become isolated vertices. Without `coerce_simple`, self-loops
/// and repeated edges are parse errors. With a `universe`, ids and cluster
/// labels are resolved against it and unknown nodes are rejected.
pub fn build_input(
    edges: &[Record<'_>],
    edges_path: &Path,
    assignments: &[Record<'_>],
    clustering_path: &Path,
    coerce_simple: bool,
    universe: Option<Universe<'_>>,
) -> Result<Input> {
    let (dense, node_ids) = resolve_vertices(edges, edges_path, assignments, clustering_path, universe)?;
    let n = node_ids.len();
    let parse_err = |path: &Path, line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };

    // (pair, record index), sorted so repeats are adjacent and in file order.
    let mut keyed: Vec<((u32, u32), u32)> = Vec::with_capacity(edges.len());
    let mut first_loop: Option<usize> = None;
    for (i, uv) in dense[..2 * edges.len()].chunks_exact(2).enumerate() {
        let (u, v) = (uv[0], uv[1]);
        if u == v {
            first_loop.get_or_insert(i);
        } else {
            keyed.push(((u.min(v), u.max(v)), i as u32));
        }
    }
    keyed.sort_unstable();
    let first_dup = keyed
        .windows(2)
        .filter(|w| w[0].0 == w[1].0)
        .map(|w| w[1].1 as usize)
        .min();
    keyed.dedup_by_key(|k| k.0);
    let dropped_edges = edges.len() - keyed.len();
    if !coerce_simple {
        let bad = match (first_loop, first_dup) {
            (Some(l), Some(d)) => Some(l.min(d)),
            (l, d) => l.or(d),
        };
        if let Some(i) = bad {
            let r = &edges[i];
            let message = if Some(i) == first_loop {
                format!("self-loop at `{}`", r.first)
            } else {
                format!("duplicate edge `{}` `{}`", r.first, r.second)
            };
            return Err(parse_err(edges_path, r.line, message));
        }
    }
    let pairs: Vec<(u32, u32)> = keyed.into_iter().map(|(p, _)| p).collect();
    let graph = Graph::from_sorted_pairs(n, &pairs);

    let mut cluster_labels: Vec<String> = universe.map(|u| u.cluster_labels.to_vec()).unwrap_or_default();
    let mut label_index: HashMap<&str, usize> = HashMap::new();
    if let Some(u) = universe {
        label_index.extend(u.cluster_labels.iter().enumerate().map(|(i, s)| (s.as_str(), i)));
    }
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    for (r, &v) in assignments.iter().zip(&dense[2 * edges.len()..]) {
        let next = label_index.len();
        let k = *label_index.entry(r.second).or_insert_with(|| {
            cluster_labels.push(r.second.to_owned());
            next
        });
        if assignment[v as usize].replace(k).is_some() {
            return Err(parse_err(
                clustering_path,
                r.line,
                format!("node `{}` is assigned more than once", r.first),
            ));
        }
    }
    let clustering = Clustering::from_assignment(assignment)?;
    Ok(Input {
        graph,
        clustering,
        node_ids,
        cluster_labels,
        dropped_edges,
    })
}

fn load(network: &Path, clustering: &Path, coerce_simple: bool, universe: Option<Universe<'_>>) -> Result<Input> {
    let (edge_text, cluster_text) = (read_text(network)?, read_text(clustering)?);
    let edges = parse_pairs(&edge_text, network)?;
    let assignments = parse_pairs(&cluster_text, clustering)?;
    build_input(&edges, network, &assignments, clustering, coerce_simple, universe)
}

pub fn load_input(network: &Path, clustering: &Path, coerce_simple: bool) -> Result<Input> {
    load(network, clustering, coerce_simple, None)
}

/// Loads a second pair on the ids and cluster labels of `universe`.
pub fn load_input_aligned(network: &Path, clustering: &Path, coerce_simple: bool, universe: Universe<'_>) -> Result<Input> {
    load(network, clustering, coerce_simple, Some(universe))
}

/// Writes through a sibling temp file and renames it into place.
pub fn write_atomic<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let file_name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp: PathBuf = path.with_file_name(format!(".{file_name}.tmp{}", std::process::id()));
    let result = (|| {
        let mut w = BufWriter::new(File::create(&tmp)?);
        body(&mut w)?;
        let f = w.into_inner().map_err(|e| e.into_error())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io_err(path))
}

fn label<'a>(ids: Option<&'a [String]>, v: usize, buf: &'a mut String) -> &'a str {
    match ids {
        Some(ids) => &ids[v],
        None => {
            buf.clear();
            use std::fmt::Write as _;
            let _ = write!(buf, "{v}");
            buf
        }
    }
}

/// One `u\tv` line per edge with `u < v`, sorted. `ids` maps dense vertices
/// back to original node ids; without it dense ids are written.
pub fn write_edges(path: &Path, g: &Graph, ids: Option<&[String]>) -> Result<()> {
    write_atomic(path, |w| {
        let (mut a, mut b) = (String::new(), String::new());
        for (u, v) in g.edges() {
            writeln!(w, "{}\t{}", label(ids, u, &mut a), label(ids, v, &mut b))?;
        }
        Ok(())
    })
}

/// One `node\tcluster` line per clustered vertex, by ascending vertex.
pub fn write_clustering(path: &Path, c: &Clustering, ids: Option<&[String]>, cluster_labels: Option<&[String]>) -> Result<()> {
    write_atomic(path, |w| {
        let (mut a, mut b) = (String::new(), String::new());
        for v in 0..c.n_vertices() {
            if let Some(k) = c.cluster_of(v) {
                writeln!(w, "{}\t{}", label(ids, v, &mut a), label(cluster_labels, k, &mut b))?;
            }
        }
        Ok(())
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)
    })
}
