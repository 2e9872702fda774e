//! The classical Cayley walk `W_Γ = (1/|Γ|) Σ_γ Σ_g |γg⟩⟨g|` and its second
//! singular value `‖W_Γ − |u⟩⟨u|‖_∞`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ElementIndex, GeneratorSet, GroupElement, GroupSpec};
use crate::spectral::{self, deflate, LinearMap, PowerOptions};

/// Walks on at most this many vertices use a dense SVD.
pub const WALK_DENSE_MAX: usize = 1024;

/// Column-stochastic sparse walk operator. Column `g` holds `|Γ|` entries
/// `(γg, 1/|Γ|)`, one per generator, duplicates kept.
#[derive(Debug, Clone)]
pub struct WalkOperator {
    index: ElementIndex,
    columns: Vec<Vec<(usize, f64)>>,
    degree: usize,
}

impl WalkOperator {
    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[GroupElement] {
        self.index.elements()
    }

    pub fn column(&self, c: usize) -> &[(usize, f64)] {
        &self.columns[c]
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, w) in col {
                m[(r, c)] += w;
            }
        }
        m
    }

    /// `|u⟩`, amplitude `1/√|G|` everywhere.
    pub fn uniform_state(&self) -> DVector<f64> {
        uniform_state(self.dim())
    }
}

pub fn uniform_state(dim: usize) -> DVector<f64> {
    DVector::from_element(dim, 1.0 / (dim as f64).sqrt())
}

impl LinearMap<f64> for WalkOperator {
    fn dim(&self) -> usize {
        self.columns.len()
    }

    fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(v.len());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, w) in col {
                out[r] += w * v[c];
            }
        }
        out
    }

    fn apply_adjoint(&self, v: &DVector<f64>) -> Option<DVector<f64>> {
        Some(DVector::from_fn(v.len(), |c, _| self.columns[c].iter().map(|&(r, w)| w * v[r]).sum()))
    }
}

pub fn build_walk(group: &GroupSpec, gens: &GeneratorSet, cap: usize) -> Result<WalkOperator> {
    if gens.group() != group {
        return Err(Error::GroupMismatch { expected: group.to_string(), found: gens.group().to_string() });
    }
    let index = ElementIndex::new(group, cap)?;
    let weight = 1.0 / gens.degree() as f64;
    let columns = index
        .elements()
        .iter()
        .map(|g| {
            gens.elements()
                .iter()
                .map(|gamma| {
                    let row = index
                        .position(&gamma.multiply(g)?)
                        .ok_or_else(|| Error::Consistency("product left the group".into()))?;
                    Ok((row, weight))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WalkOperator { index, columns, degree: gens.degree() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Iterative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lambda2 {
    pub value: f64,
    pub method: Method,
    pub converged: bool,
    pub iterations: usize,
}

/// `λ₂(W_Γ) = ‖W_Γ − |u⟩⟨u|‖_∞`. Dense SVD up to [`WALK_DENSE_MAX`]
/// vertices, power iteration above.
pub fn classical_lambda2(walk: &WalkOperator, opts: &PowerOptions) -> Result<Lambda2> {
    if walk.dim() <= WALK_DENSE_MAX {
        let value = spectral::dense_lambda2(&walk.to_dense(), &walk.uniform_state())?;
        Ok(Lambda2 { value, method: Method::Dense, converged: true, iterations: 0 })
    } else {
        classical_lambda2_iterative(walk, opts)
    }
}

pub fn classical_lambda2_iterative(walk: &WalkOperator, opts: &PowerOptions) -> Result<Lambda2> {
    let deflated = deflate(walk, walk.uniform_state())?;
    let est = spectral::operator_norm(&deflated, opts)?;
    Ok(Lambda2 { value: est.value, method: Method::Iterative, converged: est.converged, iterations: est.iterations })
}

/// `‖W|u⟩ − |u⟩‖₂`.
pub fn stationarity_residual(walk: &WalkOperator) -> f64 {
    let u = walk.uniform_state();
    (walk.apply(&u) - &u).norm()
}
