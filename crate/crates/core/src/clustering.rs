use crate::error::{Error, Result};

/// Partial assignment of vertices to clusters. Unassigned vertices are
/// outliers. Cluster ids are dense in `[0, m)` and no cluster is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    assignment: Vec<Option<u32>>,
    clusters: Vec<Vec<u32>>,
}

impl Clustering {
    /// Every vertex is an outlier.
    pub fn all_outliers(n: usize) -> Self {
        Clustering {
            assignment: vec![None; n],
            clusters: Vec::new(),
        }
    }

    pub fn from_assignment(assignment: Vec<Option<usize>>) -> Result<Self> {
        let m = assignment.iter().flatten().map(|&c| c + 1).max().unwrap_or(0);
        let mut clusters = vec![Vec::new(); m];
        for (v, c) in assignment.iter().enumerate() {
            if let Some(c) = *c {
                clusters[c].push(v as u32);
            }
        }
        if let Some(empty) = clusters.iter().position(Vec::is_empty) {
            return Err(Error::EmptyCluster(empty));
        }
        Ok(Clustering {
            assignment: assignment.into_iter().map(|c| c.map(|c| c as u32)).collect(),
            clusters,
        })
    }

    /// Clusters given as member lists over vertices `[0, n)`.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Self> {
        let mut assignment = vec![None; n];
        for (c, members) in clusters.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::EmptyCluster(c));
            }
            for &v in members {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        n_vertices: n,
                    });
                }
                if assignment[v].replace(c).is_some() {
                    return Err(Error::DuplicateAssignment(v));
                }
            }
        }
        Self::from_assignment(assignment)
    }

    pub fn n_vertices(&self) -> usize {
        self.assignment.len()
    }

    pub fn n_clusters(&self) -> usize {
        self.clusters.len()
    }

    #[inline]
    pub fn cluster_of(&self, v: usize) -> Option<usize> {
        self.assignment[v].map(|c| c as usize)
    }

    #[inline]
    pub fn is_outlier(&self, v: usize) -> bool {
        self.assignment[v].is_none()
    }

    /// Members of cluster `c`, ascending.
    pub fn members(&self, c: usize) -> &[u32] {
        &self.clusters[c]
    }

    pub fn clusters(&self) -> &[Vec<u32>] {
        &self.clusters
    }

    pub fn assignment(&self) -> &[Option<u32>] {
        &self.assignment
    }

    pub fn outliers(&self) -> Vec<usize> {
        (0..self.n_vertices()).filter(|&v| self.is_outlier(v)).collect()
    }

    pub fn n_outliers(&self) -> usize {
        self.assignment.iter().filter(|c| c.is_none()).count()
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    /// Total clustering in which every outlier becomes its own singleton
    /// cluster. Singletons are appended after the existing clusters in
    /// ascending vertex order.
    pub fn with_outlier_singletons(&self) -> Clustering {
        let mut assignment = self.assignment.clone();
        let mut clusters = self.clusters.clone();
        for (v, slot) in assignment.iter_mut().enumerate() {
            if slot.is_none() {
                *slot = Some(clusters.len() as u32);
                clusters.push(vec![v as u32]);
            }
        }
        Clustering {
            assignment,
            clusters,
        }
    }
}
