//! Relaxation time of the lazy random walk.
//!
//! On the largest connected component, the lazy walk `(P + I) / 2` is similar
//! to the symmetric matrix `M = (I + D^{-1/2} A D^{-1/2}) / 2`, whose top
//! eigenvector is `sqrt(d)` with eigenvalue 1 and whose spectrum lies in
//! `[0, 1]`. Power iteration on `M`, kept orthogonal to `sqrt(d)`, converges to
//! the second eigenvalue `λ₂`; the characteristic time is `1 / (1 − λ₂)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, induced_by_sorted, Graph};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy)]
pub struct CharTimeOptions<F> {
    /// Stop once `‖Mx − ρx‖` falls below this.
    pub tolerance: F,
    pub max_iterations: usize,
}

impl<F: Real> Default for CharTimeOptions<F> {
    fn default() -> Self {
        CharTimeOptions {
            tolerance: F::spectral_tolerance(),
            max_iterations: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharTime<F> {
    pub value: F,
    pub lambda2: F,
    pub iterations: usize,
    /// False when the iteration cap was hit; `value` is then the best estimate.
    pub converged: bool,
    pub component_size: usize,
}

fn start_vector<F: Real>(n: usize) -> Vec<F> {
    // Fixed pseudo-random start; any vector with a component along the second
    // eigenvector works.
    (0..n as u64)
        .map(|i| {
            let mut z = i.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(0x2545_f491_4f6c_dd1d);
            z = (z ^ (z >> 31)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z ^= z >> 29;
            F::lit((z >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        })
        .collect()
}

fn dot<F: Real>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn orthogonalize<F: Real>(x: &mut [F], unit: &[F]) {
    let p = dot(x, unit);
    for (xi, &ui) in x.iter_mut().zip(unit) {
        *xi = *xi - p * ui;
    }
}

pub fn char_time<F: Real>(g: &Graph, opts: &CharTimeOptions<F>) -> Result<CharTime<F>> {
    if g.n_vertices() == 0 {
        return Err(Error::EmptyGraph);
    }
    let comps = connected_components(g);
    let label = comps.largest().expect("non-empty graph");
    let members: Vec<u32> = comps.members(label).into_iter().map(|v| v as u32).collect();
    let h = induced_by_sorted(g, members).graph;
    let n = h.n_vertices();
    if h.n_edges() == 0 {
        return Err(Error::NoEdges);
    }

    let half = F::lit(0.5);
    let inv_sqrt_deg: Vec<F> = (0..n).map(|v| F::of_usize(h.degree(v)).sqrt().recip()).collect();
    let total_deg = F::of_usize(2 * h.n_edges());
    let top: Vec<F> = (0..n)
        .map(|v| (F::of_usize(h.degree(v)) / total_deg).sqrt())
        .collect();

    let apply = |x: &[F], y: &mut [F]| {
        for v in 0..n {
            let s: F = h
                .neighbors(v)
                .iter()
                .map(|&w| x[w as usize] * inv_sqrt_deg[w as usize])
                .sum();
            y[v] = half * (x[v] + s * inv_sqrt_deg[v]);
        }
    };

    let mut x = start_vector::<F>(n);
    orthogonalize(&mut x, &top);
    let norm = dot(&x, &x).sqrt();
    if n == 1 || norm == F::zero() {
        return Err(Error::NoEdges);
    }
    x.iter_mut().for_each(|xi| *xi = *xi / norm);

    let mut y = vec![F::zero(); n];
    let mut rho = F::zero();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        iterations += 1;
        apply(&x, &mut y);
        orthogonalize(&mut y, &top);
        rho = dot(&x, &y);
        let residual = x
            .iter()
            .zip(&y)
            .map(|(&xi, &yi)| (yi - rho * xi) * (yi - rho * xi))
            .sum::<F>()
            .sqrt();
        if residual <= opts.tolerance {
            converged = true;
            break;
        }
        let ny = dot(&y, &y).sqrt();
        if ny == F::zero() {
            rho = F::zero();
            converged = true;
            break;
        }
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = yi / ny;
        }
    }
    let lambda2 = rho.max(F::zero()).min(F::one());
    Ok(CharTime {
        value: (F::one() - lambda2).recip(),
        lambda2,
        iterations,
        converged,
        component_size: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn clique(n: usize, offset: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u + offset, v + offset));
            }
        }
        e
    }

    #[test]
    fn k4_relaxation_time() {
        let g = build_graph(&clique(4, 0)).unwrap();
        let t = char_time::<f64>(&g, &CharTimeOptions::default()).unwrap();
        assert!(t.converged);
        assert!((t.lambda2 - 1.0 / 3.0).abs() < 1e-9);
        assert!((t.value - 1.5).abs() < 1e-8);
        let t32 = char_time::<f32>(&g, &CharTimeOptions::default()).unwrap();
        assert!((t32.value - 1.5).abs() < 1e-4);
    }

    #[test]
    fn bottleneck_slows_mixing() {
        let single = char_time::<f64>(&build_graph(&clique(5, 0)).unwrap(), &CharTimeOptions::default())
            .unwrap()
            .value;
        let mut e = clique(5, 0);
        e.extend(clique(5, 5));
        e.push((0, 5));
        let joined = char_time::<f64>(&build_graph(&e).unwrap(), &CharTimeOptions::default())
            .unwrap()
            .value;
        assert!(joined > single);
    }

    #[test]
    fn single_edge_and_empty() {
        let t = char_time::<f64>(&build_graph(&[(0, 1)]).unwrap(), &CharTimeOptions::default()).unwrap();
        assert!((t.value - 1.0).abs() < 1e-12);
        assert!(matches!(
            char_time::<f64>(&Graph::empty(3), &CharTimeOptions::default()),
            Err(Error::NoEdges)
        ));
        assert!(matches!(
            char_time::<f64>(&Graph::empty(0), &CharTimeOptions::default()),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn iteration_cap_is_reported() {
        let g = build_graph(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        let t = char_time::<f64>(
            &g,
            &CharTimeOptions {
                tolerance: 0.0,
                max_iterations: 3,
            },
        )
        .unwrap();
        assert!(!t.converged);
        assert_eq!(t.iterations, 3);
        assert!(t.value >= 1.0);
    }
}
