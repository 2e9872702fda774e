//! Operator norms of explicit matrices and abstract linear maps, with
//! deflation of a known fixed vector.
//!
//! The iterative path is restarted power iteration on `M†M`; its Rayleigh
//! quotient converges to `‖M‖²_∞` from below. Starting vectors come from a
//! ChaCha stream keyed by `(seed, restart)`, so results are reproducible and
//! adding restarts never lowers the estimate.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Largest dimension handed to a dense SVD.
pub const DENSE_CAP: usize = 4096;

/// Tolerance on `‖fixed‖ = 1` accepted by [`deflate`].
pub const UNIT_TOL: f64 = 1e-10;

/// Field scalars the kernels run over (real or complex doubles).
pub trait Scalar: ComplexField<RealField = f64> + Copy {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Scalar for f64 {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Scalar for Complex64 {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }
}

/// A square linear map given by its action, optionally with its adjoint.
pub trait LinearMap<T: Scalar> {
    fn dim(&self) -> usize;

    fn apply(&self, v: &DVector<T>) -> DVector<T>;

    /// `M†v`, if the map knows its adjoint.
    fn apply_adjoint(&self, _v: &DVector<T>) -> Option<DVector<T>> {
        None
    }
}

impl<T: Scalar, M: LinearMap<T> + ?Sized> LinearMap<T> for &M {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, v: &DVector<T>) -> DVector<T> {
        (**self).apply(v)
    }

    fn apply_adjoint(&self, v: &DVector<T>) -> Option<DVector<T>> {
        (**self).apply_adjoint(v)
    }
}

/// An explicit square matrix.
#[derive(Debug, Clone)]
pub struct DenseMap<T: Scalar>(pub DMatrix<T>);

impl<T: Scalar> LinearMap<T> for DenseMap<T> {
    fn dim(&self) -> usize {
        self.0.nrows()
    }

    fn apply(&self, v: &DVector<T>) -> DVector<T> {
        &self.0 * v
    }

    fn apply_adjoint(&self, v: &DVector<T>) -> Option<DVector<T>> {
        Some(self.0.ad_mul(v))
    }
}

/// A map given by closures; the adjoint is optional.
pub struct FnMap<F, G> {
    dim: usize,
    forward: F,
    adjoint: Option<G>,
}

impl<F, G> FnMap<F, G> {
    pub fn new(dim: usize, forward: F, adjoint: Option<G>) -> Self {
        FnMap { dim, forward, adjoint }
    }
}

impl<T, F, G> LinearMap<T> for FnMap<F, G>
where
    T: Scalar,
    F: Fn(&DVector<T>) -> DVector<T>,
    G: Fn(&DVector<T>) -> DVector<T>,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, v: &DVector<T>) -> DVector<T> {
        (self.forward)(v)
    }

    fn apply_adjoint(&self, v: &DVector<T>) -> Option<DVector<T>> {
        self.adjoint.as_ref().map(|g| g(v))
    }
}

/// `v ↦ Mv − ⟨f|v⟩ f` for a unit vector `f`.
pub struct Deflated<T: Scalar, M> {
    inner: M,
    fixed: DVector<T>,
}

pub fn deflate<T: Scalar, M: LinearMap<T>>(inner: M, fixed: DVector<T>) -> Result<Deflated<T, M>> {
    if fixed.len() != inner.dim() {
        return Err(Error::DimensionMismatch { expected: inner.dim(), found: fixed.len() });
    }
    let norm = fixed.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonUnitVector(norm));
    }
    Ok(Deflated { inner, fixed })
}

impl<T: Scalar, M> Deflated<T, M> {
    pub fn fixed(&self) -> &DVector<T> {
        &self.fixed
    }

    fn project_out(&self, mut w: DVector<T>, v: &DVector<T>) -> DVector<T> {
        let overlap = self.fixed.dotc(v);
        w.axpy(-overlap, &self.fixed, T::one());
        w
    }
}

impl<T: Scalar, M: LinearMap<T>> LinearMap<T> for Deflated<T, M> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn apply(&self, v: &DVector<T>) -> DVector<T> {
        self.project_out(self.inner.apply(v), v)
    }

    // (M − |f⟩⟨f|)† = M† − |f⟩⟨f|
    fn apply_adjoint(&self, v: &DVector<T>) -> Option<DVector<T>> {
        self.inner.apply_adjoint(v).map(|w| self.project_out(w, v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptions {
    /// Stop when successive Rayleigh quotients differ by less than `tol`
    /// relative to their size.
    pub tol: f64,
    pub max_iter: usize,
    /// Number of random restarts; the maximum over restarts is reported.
    pub seeds: usize,
    pub seed: u64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        PowerOptions { tol: 1e-12, max_iter: 10_000, seeds: 3, seed: 0 }
    }
}

impl PowerOptions {
    pub fn with_seed(self, seed: u64) -> Self {
        PowerOptions { seed, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    /// True when every restart met the convergence test.
    pub converged: bool,
    /// Iterations summed over restarts.
    pub iterations: usize,
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Random unit vector from the `(seed, restart)` stream.
pub fn random_unit_vector<T: Scalar>(dim: usize, seed: u64, restart: usize) -> DVector<T> {
    let mut rng = restart_rng(seed, restart);
    let v = DVector::from_fn(dim, |_, _| T::sample(&mut rng));
    let n = v.norm();
    v.unscale(n)
}

/// Largest singular value of `m` by restarted power iteration on `M†M`.
pub fn operator_norm<T: Scalar, M: LinearMap<T>>(m: &M, opts: &PowerOptions) -> Result<NormEstimate> {
    let dim = m.dim();
    if dim == 0 {
        return Ok(NormEstimate { value: 0.0, converged: true, iterations: 0 });
    }
    let mut best = 0.0f64;
    let mut all_converged = true;
    let mut iterations = 0;
    for restart in 0..opts.seeds.max(1) {
        let mut v: DVector<T> = random_unit_vector(dim, opts.seed, restart);
        let mut prev: Option<f64> = None;
        let mut rq = 0.0;
        let mut converged = false;
        for _ in 0..opts.max_iter {
            iterations += 1;
            let w = m.apply(&v);
            rq = w.norm_squared();
            let x = m.apply_adjoint(&w).ok_or(Error::NoAdjoint)?;
            let nx = x.norm();
            // σ below ~1e-14: the map is numerically zero on this start
            if rq < 1e-28 || nx == 0.0 {
                converged = true;
                break;
            }
            if let Some(p) = prev {
                if (rq - p).abs() <= opts.tol * rq {
                    converged = true;
                    break;
                }
            }
            prev = Some(rq);
            v = x.unscale(nx);
        }
        best = best.max(rq.sqrt());
        all_converged &= converged;
    }
    Ok(NormEstimate { value: best, converged: all_converged, iterations })
}

/// Largest singular value of an explicit matrix.
pub fn dense_norm<T: Scalar>(m: &DMatrix<T>) -> Result<f64> {
    let dim = m.nrows().max(m.ncols());
    if dim > DENSE_CAP {
        return Err(Error::DenseCapExceeded { dim, cap: DENSE_CAP });
    }
    if m.is_empty() {
        return Ok(0.0);
    }
    Ok(m.singular_values().iter().copied().fold(0.0, f64::max))
}

/// `‖M − |f⟩⟨f|‖_∞` by full SVD.
pub fn dense_lambda2<T: Scalar>(matrix: &DMatrix<T>, fixed: &DVector<T>) -> Result<f64> {
    if !matrix.is_square() || matrix.nrows() != fixed.len() {
        return Err(Error::DimensionMismatch { expected: matrix.nrows(), found: fixed.len() });
    }
    let norm = fixed.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonUnitVector(norm));
    }
    dense_norm(&(matrix - fixed * fixed.adjoint()))
}
