//! The expander channel `ℰ(ρ) = (1/|Γ|) Σ_γ r_λ(γ) ρ r_λ(γ)†`, its
//! superoperator, its second singular value, and the gap certificate
//! `λ₂(ℰ) ≤ λ₂(W_Γ)`.
//!
//! Vectorization is column stacking: `vec(AXB) = (Bᵀ ⊗ A) vec(X)`, so the
//! superoperator is `(1/|Γ|) Σ r(γ)* ⊗ r(γ)`. This is `r ⊗ r*` with the two
//! tensor factors swapped, a unitary relabelling that leaves singular values
//! unchanged. The fixed vector `τ̂ = vec(I)/√d` is the same in either order.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::cayley::{build_walk, classical_lambda2, Method};
use crate::error::{Error, Result};
use crate::group::{GeneratorSet, GroupSpec};
use crate::rep::{list_irreps, IrrepHandle, IrrepLabel};
use crate::spectral::{self, deflate, LinearMap, NormEstimate, PowerOptions, Scalar};

/// Largest irrep dimension for which the `d² × d²` superoperator is formed.
pub const SUPEROPERATOR_MAX_DIM: usize = 64;

/// Default slack in `quantum λ₂ ≤ classical λ₂ + tolerance`.
pub const DEFAULT_GAP_TOLERANCE: f64 = 1e-8;

const STATE_TOL: f64 = 1e-10;

/// A unital channel with `degree()` equally weighted unitary Kraus operators,
/// acting on `dim × dim` matrices.
pub trait ChannelMap<T: Scalar> {
    fn dim(&self) -> usize;

    fn degree(&self) -> usize;

    fn apply_operator(&self, x: &DMatrix<T>) -> DMatrix<T>;

    /// The Hilbert–Schmidt adjoint `X ↦ (1/|Γ|) Σ K† X K`.
    fn apply_adjoint_operator(&self, x: &DMatrix<T>) -> DMatrix<T>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSource {
    pub group: GroupSpec,
    pub generators: Vec<String>,
    pub irrep: IrrepLabel,
}

#[derive(Debug, Clone)]
pub struct ExpanderChannel {
    dim: usize,
    kraus: Vec<DMatrix<Complex64>>,
    source: Option<ChannelSource>,
}

/// Kraus list `[r_λ(γ)]_{γ ∈ Γ}`, each weighted `1/|Γ|`.
pub fn build_channel(gens: &GeneratorSet, h: &IrrepHandle) -> Result<ExpanderChannel> {
    if gens.group() != h.group() {
        return Err(Error::GroupMismatch { expected: h.group().to_string(), found: gens.group().to_string() });
    }
    if h.is_trivial() {
        return Err(Error::TrivialIrrep);
    }
    let kraus = gens.elements().iter().map(|g| h.matrix(g)).collect::<Result<Vec<_>>>()?;
    Ok(ExpanderChannel {
        dim: h.dim(),
        kraus,
        source: Some(ChannelSource {
            group: gens.group().clone(),
            generators: gens.to_strings(),
            irrep: h.label().clone(),
        }),
    })
}

impl ExpanderChannel {
    /// A channel from explicit unitaries (not checked for unitarity; see
    /// [`ExpanderChannel::unitality_residual`]).
    pub fn from_unitaries(kraus: Vec<DMatrix<Complex64>>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyGenerators)?;
        let dim = first.nrows();
        for k in &kraus {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: k.ncols() });
            }
        }
        Ok(ExpanderChannel { dim, kraus, source: None })
    }

    pub fn kraus(&self) -> &[DMatrix<Complex64>] {
        &self.kraus
    }

    pub fn source(&self) -> Option<&ChannelSource> {
        self.source.as_ref()
    }

    fn weight(&self) -> f64 {
        1.0 / self.kraus.len() as f64
    }

    /// `‖(1/|Γ|) Σ K†K − I‖_F`.
    pub fn trace_preservation_residual(&self) -> f64 {
        let sum = self.kraus.iter().fold(DMatrix::zeros(self.dim, self.dim), |acc, k| acc + k.adjoint() * k);
        (sum * Complex64::from(self.weight()) - DMatrix::identity(self.dim, self.dim)).norm()
    }

    /// `‖(1/|Γ|) Σ KK† − I‖_F`.
    pub fn unitality_residual(&self) -> f64 {
        let sum = self.kraus.iter().fold(DMatrix::zeros(self.dim, self.dim), |acc, k| acc + k * k.adjoint());
        (sum * Complex64::from(self.weight()) - DMatrix::identity(self.dim, self.dim)).norm()
    }

    /// The same channel with every Kraus operator conjugated, `K ↦ U K U†`.
    pub fn conjugated(&self, u: &DMatrix<Complex64>) -> ExpanderChannel {
        ExpanderChannel {
            dim: self.dim,
            kraus: self.kraus.iter().map(|k| u * k * u.adjoint()).collect(),
            source: self.source.clone(),
        }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rho.dim() });
        }
        Ok(DensityMatrix(self.apply_operator(&rho.0)))
    }
}

impl ChannelMap<Complex64> for ExpanderChannel {
    fn dim(&self) -> usize {
        self.dim
    }

    fn degree(&self) -> usize {
        self.kraus.len()
    }

    fn apply_operator(&self, x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let sum = self.kraus.iter().fold(DMatrix::zeros(self.dim, self.dim), |acc, k| acc + k * x * k.adjoint());
        sum * Complex64::from(self.weight())
    }

    fn apply_adjoint_operator(&self, x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let sum = self.kraus.iter().fold(DMatrix::zeros(self.dim, self.dim), |acc, k| acc + k.adjoint() * x * k);
        sum * Complex64::from(self.weight())
    }
}

/// `|τ̂⟩ = vec(I)/√d`, the fixed point of every unital channel.
pub fn fixed_vector<T: Scalar>(dim: usize) -> DVector<T> {
    let scale = T::from_real(1.0 / (dim as f64).sqrt());
    DVector::from_fn(dim * dim, |k, _| if k % (dim + 1) == 0 { scale } else { T::zero() })
}

/// Column-stacked superoperator `(1/|Γ|) Σ r(γ)* ⊗ r(γ)`.
pub fn superoperator(ch: &ExpanderChannel) -> Result<DMatrix<Complex64>> {
    if ch.dim > SUPEROPERATOR_MAX_DIM {
        return Err(Error::DenseCapExceeded { dim: ch.dim * ch.dim, cap: SUPEROPERATOR_MAX_DIM.pow(2) });
    }
    let n = ch.dim * ch.dim;
    let sum = ch.kraus.iter().fold(DMatrix::zeros(n, n), |acc, k| acc + k.map(|z| z.conj()).kronecker(k));
    Ok(sum * Complex64::from(ch.weight()))
}

/// `‖Ê − |τ̂⟩⟨τ̂|‖_∞` by dense SVD. One-dimensional irreps give 0: the
/// deflated space is empty.
pub fn quantum_lambda2_dense(ch: &ExpanderChannel) -> Result<f64> {
    if ch.dim == 1 {
        return Ok(0.0);
    }
    spectral::dense_lambda2(&superoperator(ch)?, &fixed_vector(ch.dim))
}

/// A channel viewed as a linear map on `vec(X)`.
struct Vectorized<'a, C>(&'a C);

impl<T: Scalar, C: ChannelMap<T>> LinearMap<T> for Vectorized<'_, C> {
    fn dim(&self) -> usize {
        self.0.dim() * self.0.dim()
    }

    fn apply(&self, v: &DVector<T>) -> DVector<T> {
        let d = self.0.dim();
        let x = DMatrix::from_column_slice(d, d, v.as_slice());
        let y = self.0.apply_operator(&x);
        DVector::from_column_slice(y.as_slice())
    }

    fn apply_adjoint(&self, v: &DVector<T>) -> Option<DVector<T>> {
        let d = self.0.dim();
        let x = DMatrix::from_column_slice(d, d, v.as_slice());
        let y = self.0.apply_adjoint_operator(&x);
        Some(DVector::from_column_slice(y.as_slice()))
    }
}

/// Matrix-free `λ₂(ℰ)`: power iteration of `M†M` with
/// `M(X) = ℰ(X) − (tr X / d) I`, in the Hilbert–Schmidt inner product.
pub fn quantum_lambda2_iterative<T: Scalar, C: ChannelMap<T>>(ch: &C, opts: &PowerOptions) -> Result<NormEstimate> {
    if ch.dim() == 1 {
        return Ok(NormEstimate { value: 0.0, converged: true, iterations: 0 });
    }
    let map = Vectorized(ch);
    let deflated = deflate(&map, fixed_vector::<T>(ch.dim()))?;
    spectral::operator_norm(&deflated, opts)
}

/// `‖(1/|Γ|) Σ_γ r_ν(γ)‖_∞` for one irrep.
pub fn average_norm(gens: &GeneratorSet, h: &IrrepHandle) -> Result<f64> {
    let sum =
        gens.elements().iter().try_fold(DMatrix::zeros(h.dim(), h.dim()), |acc, g| h.matrix(g).map(|m| acc + m))?;
    spectral::dense_norm(&(sum / Complex64::from(gens.degree() as f64)))
}

/// Per-irrep averaged norms. Their maximum over nontrivial irreps is
/// `λ₂(W_Γ)`; restricted to irreps inside `V_λ ⊗ V_λ*` it is `λ₂(ℰ)`.
#[derive(Debug, Clone)]
pub struct IrrepNorms {
    pub norms: Vec<(IrrepLabel, f64)>,
    trivial: IrrepLabel,
}

impl IrrepNorms {
    fn max_over(&self, labels: impl Fn(&IrrepLabel) -> bool) -> f64 {
        self.norms.iter().filter(|(l, _)| *l != self.trivial && labels(l)).map(|p| p.1).fold(0.0, f64::max)
    }

    /// `max_{ν ≠ triv} ‖(1/|Γ|) Σ r_ν(γ)‖_∞`.
    pub fn classical_max(&self) -> f64 {
        self.max_over(|_| true)
    }

    /// The same maximum restricted to `ν` with `m_ν ≠ 0`.
    pub fn quantum_max(&self, multiplicities: &[(IrrepLabel, usize)]) -> f64 {
        self.max_over(|l| multiplicities.iter().any(|(m, k)| m == l && *k > 0))
    }
}

pub fn irrep_max_crosscheck(group: &GroupSpec, gens: &GeneratorSet, cap: usize) -> Result<IrrepNorms> {
    let irreps = list_irreps(group, cap)?;
    let norms = irreps.iter().map(|h| Ok((h.label().clone(), average_norm(gens, h)?))).collect::<Result<Vec<_>>>()?;
    Ok(IrrepNorms { norms, trivial: IrrepHandle::trivial(group)?.label().clone() })
}

/// A density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(DMatrix<Complex64>);

impl DensityMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidState("not square".into()));
        }
        if (&m - m.adjoint()).norm() > STATE_TOL {
            return Err(Error::InvalidState("not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr - Complex64::from(1.0)).norm() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let rho = DensityMatrix(m);
        if rho.eigenvalues().iter().any(|&p| p < -STATE_TOL) {
            return Err(Error::InvalidState("negative eigenvalue".into()));
        }
        Ok(rho)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(DMatrix::identity(dim, dim) / Complex64::from(dim as f64))
    }

    /// `|ψ⟩⟨ψ|` for a nonzero `ψ` (normalized here).
    pub fn pure(psi: &DVector<Complex64>) -> Self {
        let psi = psi.unscale(psi.norm());
        DensityMatrix(&psi * psi.adjoint())
    }

    /// `AA†/tr(AA†)` for a complex Gaussian `A` (Hilbert–Schmidt measure).
    pub fn random<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let a = DMatrix::from_fn(dim, dim, |_, _| Complex64::sample(rng));
        let m = &a * a.adjoint();
        let tr = m.trace();
        DensityMatrix(m / tr)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.0 + self.0.adjoint()) * Complex64::from(0.5);
        h.symmetric_eigenvalues().iter().copied().collect()
    }
}

/// Von Neumann entropy in bits, `−Σ p log₂ p` with `0 log 0 = 0`.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues().into_iter().filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Dense,
    Iterative,
}

#[derive(Debug, Clone, Copy)]
pub struct GapOptions {
    pub method: MethodChoice,
    pub tolerance: f64,
    pub power: PowerOptions,
    pub cap: usize,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions {
            method: MethodChoice::Auto,
            tolerance: DEFAULT_GAP_TOLERANCE,
            power: PowerOptions::default(),
            cap: crate::group::DEFAULT_ELEMENT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub group: String,
    pub order: String,
    pub generators: Vec<String>,
    pub irrep: String,
    pub dim: usize,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Both sides of the gap inequality for one `(G, Γ, λ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub schema: u32,
    pub classical_lambda2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_reason: Option<String>,
    pub quantum_lambda2: f64,
    /// `quantum ≤ classical + tolerance`; absent when the classical side is.
    pub inequality_holds: Option<bool>,
    pub method: Method,
    pub tolerance: f64,
    pub iterations: usize,
    pub converged: bool,
    pub notes: Vec<String>,
    pub instance: InstanceSummary,
}

impl SpectralReport {
    pub const SCHEMA: u32 = 1;

    /// Recomputes `inequality_holds` from the two values.
    pub fn evaluate(&mut self) {
        self.inequality_holds = self.classical_lambda2.map(|c| self.quantum_lambda2 <= c + self.tolerance);
    }

    /// `classical − quantum`; nonnegative when the inequality holds exactly.
    pub fn margin(&self) -> Option<f64> {
        self.classical_lambda2.map(|c| c - self.quantum_lambda2)
    }
}

/// Computes `λ₂(W_Γ)` and `λ₂(ℰ)` and compares them.
pub fn verify_gap_inequality(
    group: &GroupSpec,
    gens: &GeneratorSet,
    h: &IrrepHandle,
    opts: &GapOptions,
) -> Result<SpectralReport> {
    let channel = build_channel(gens, h)?;
    let walk = build_walk(group, gens, opts.cap)?;
    let classical = classical_lambda2(&walk, &opts.power)?;

    let use_dense = match opts.method {
        MethodChoice::Dense => true,
        MethodChoice::Iterative => false,
        MethodChoice::Auto => h.dim() <= SUPEROPERATOR_MAX_DIM,
    };
    let mut notes = Vec::new();
    if h.dim() == 1 {
        notes.push("one-dimensional irrep: the deflated space is empty, quantum lambda2 = 0".to_string());
    }
    if !classical.converged {
        notes.push("classical power iteration did not converge".to_string());
    }
    let (quantum, method, iterations, converged) = if use_dense {
        (quantum_lambda2_dense(&channel)?, Method::Dense, 0, true)
    } else {
        let est = quantum_lambda2_iterative(&channel, &opts.power)?;
        (est.value, Method::Iterative, est.iterations, est.converged)
    };
    if !converged {
        notes.push("quantum power iteration did not converge".to_string());
    }
    let mut report = SpectralReport {
        schema: SpectralReport::SCHEMA,
        classical_lambda2: Some(classical.value),
        classical_reason: None,
        quantum_lambda2: quantum,
        inequality_holds: None,
        method,
        tolerance: opts.tolerance,
        iterations: iterations + classical.iterations,
        converged: converged && classical.converged,
        notes,
        instance: InstanceSummary {
            group: group.to_string(),
            order: group.order().to_string(),
            generators: gens.to_strings(),
            irrep: h.label().to_string(),
            dim: h.dim(),
            degree: gens.degree(),
            seed: None,
        },
    };
    report.evaluate();
    Ok(report)
}
