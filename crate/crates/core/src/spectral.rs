//! Dirichlet eigenvalues of vertex subsets.
//!
//! `L_S = I - D_S^{-1/2} A_S D_S^{-1/2}` is the normalized Laplacian restricted
//! to the rows and columns of `S`, with degrees taken from the whole graph.
//! Its smallest eigenvalue `λ_S` is computed densely by cyclic Jacobi
//! rotations, which is plenty for the small sets used in verification.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest set accepted by [`dirichlet_lambda`].
pub const DENSE_LIMIT: usize = 500;

const MAX_SWEEPS: usize = 100;

/// Dense symmetric `L_S`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedLaplacian {
    members: Vec<usize>,
    entries: Vec<f64>,
}

impl RestrictedLaplacian {
    pub fn new(graph: &Graph, set: &VertexSet) -> Result<Self> {
        let members = set.members().to_vec();
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        if members.len() > DENSE_LIMIT {
            return Err(Error::SetTooLarge {
                size: members.len(),
                limit: DENSE_LIMIT,
            });
        }
        if let Some(&v) = members.iter().find(|&&v| graph.degree(v) == 0) {
            return Err(Error::IsolatedVertex(v));
        }
        let s = members.len();
        let mut entries = vec![0.0; s * s];
        for (i, &u) in members.iter().enumerate() {
            entries[i * s + i] = 1.0;
            let du = graph.degree(u) as f64;
            for &w in graph.neighbors(u) {
                if let Ok(j) = members.binary_search(&w) {
                    entries[i * s + j] = -1.0 / (du * graph.degree(w) as f64).sqrt();
                }
            }
        }
        Ok(Self { members, entries })
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Graph vertex behind each row.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size() + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `‖L_S x - λ x‖₂`.
    pub fn residual(&self, lambda: f64, x: &[f64]) -> f64 {
        let s = self.size();
        (0..s)
            .map(|i| {
                let row = &self.entries[i * s..(i + 1) * s];
                let lx: f64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
                (lx - lambda * x[i]).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Smallest eigenpair of `L_S`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletEigen {
    pub lambda: f64,
    /// Unit eigenvector indexed like [`RestrictedLaplacian::members`].
    pub vector: Vec<f64>,
    pub residual: f64,
}

/// `λ_S` together with its eigenvector and residual.
pub fn dirichlet_eigen(graph: &Graph, set: &VertexSet) -> Result<DirichletEigen> {
    let laplacian = RestrictedLaplacian::new(graph, set)?;
    let (values, vectors) = jacobi_eigen(laplacian.entries(), laplacian.size());
    let s = laplacian.size();
    let best = (0..s)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("set is nonempty");
    let vector: Vec<f64> = (0..s).map(|i| vectors[i * s + best]).collect();
    let lambda = values[best];
    let residual = laplacian.residual(lambda, &vector);
    Ok(DirichletEigen {
        lambda,
        vector,
        residual,
    })
}

/// `λ_S`, the smallest Dirichlet eigenvalue of `S`.
pub fn dirichlet_lambda(graph: &Graph, set: &VertexSet) -> Result<f64> {
    dirichlet_eigen(graph, set).map(|e| e.lambda)
}

/// Eigenvalues and column eigenvectors of a symmetric row-major matrix.
fn jacobi_eigen(matrix: &[f64], s: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; s * s];
    for i in 0..s {
        v[i * s + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..s)
            .flat_map(|i| (0..s).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * s + j].powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale * 1e-2 {
            break;
        }
        for p in 0..s {
            for q in p + 1..s {
                let apq = a[p * s + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * s + p];
                let aqq = a[q * s + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..s {
                    let akp = a[k * s + p];
                    let akq = a[k * s + q];
                    a[k * s + p] = c * akp - sn * akq;
                    a[k * s + q] = sn * akp + c * akq;
                }
                for k in 0..s {
                    let apk = a[p * s + k];
                    let aqk = a[q * s + k];
                    a[p * s + k] = c * apk - sn * aqk;
                    a[q * s + k] = sn * apk + c * aqk;
                }
                a[p * s + q] = 0.0;
                a[q * s + p] = 0.0;
                for k in 0..s {
                    let vkp = v[k * s + p];
                    let vkq = v[k * s + q];
                    v[k * s + p] = c * vkp - sn * vkq;
                    v[k * s + q] = sn * vkp + c * vkq;
                }
            }
        }
    }
    ((0..s).map(|i| a[i * s + i]).collect(), v)
}
