//! The `N`-dimensional standard irrep `(N,1)` of `S_{N+1}`, realized without
//! matrices inside the defining representation.
//!
//! The defining representation on `{0, …, N}` splits as trivial ⊕ `(N,1)`,
//! with the trivial part spanned by the uniform vector. A Householder
//! reflection `H` exchanges the last basis vector with the uniform vector, so
//! `H` maps `span(e_0, …, e_{N-1})` onto the complement of the uniform
//! vector, and `r_{(N,1)}(π) = P · H · r_def(π) · H · Pᵀ` where `Pᵀ` pads a
//! zero in the last slot and `P` drops it. Every step is `O(N)` per vector.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::channel::{ChannelMap, ExpanderChannel};
use crate::error::{Error, Result};
use crate::group::{GeneratorSet, GroupSpec, Permutation};
use crate::spectral::{deflate, operator_norm, LinearMap, NormEstimate, PowerOptions};

/// Largest `N` accepted by the matrix-free channel (the iterate is `N × N`).
pub const DEFAULT_MAX_N: usize = 2048;

/// Leakage into the last slot above this is reported as an error.
pub const LEAKAGE_ERROR: f64 = 1e-8;

/// Generator permutations `π_j` of `{0, …, N}`, given pointwise.
pub trait PermutationOracle {
    /// `N`; the oracle permutes `N + 1` points.
    fn dimension(&self) -> usize;

    fn generator_count(&self) -> usize;

    /// `π_j(x)`.
    fn image(&self, j: usize, x: usize) -> usize;
}

/// Explicitly stored generators, `O(1)` lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitPermutations {
    dimension: usize,
    perms: Vec<Permutation>,
}

impl ExplicitPermutations {
    pub fn new(perms: Vec<Permutation>) -> Result<Self> {
        let first = perms.first().ok_or(Error::EmptyGenerators)?;
        let points = first.degree();
        if points < 2 {
            return Err(Error::InvalidGroup("need at least two points".into()));
        }
        if let Some(p) = perms.iter().find(|p| p.degree() != points) {
            return Err(Error::DimensionMismatch { expected: points, found: p.degree() });
        }
        Ok(ExplicitPermutations { dimension: points - 1, perms })
    }

    /// `degree` independent uniform permutations of `N + 1` points.
    pub fn random<R: Rng + ?Sized>(n: usize, degree: usize, rng: &mut R) -> Result<Self> {
        let perms = (0..degree)
            .map(|_| {
                let mut images: Vec<usize> = (0..=n).collect();
                images.shuffle(rng);
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(perms)
    }

    pub fn from_generator_set(gens: &GeneratorSet) -> Result<Self> {
        let perms = gens
            .elements()
            .iter()
            .map(|g| {
                g.as_permutation().cloned().ok_or_else(|| Error::GroupMismatch {
                    expected: "a symmetric group".into(),
                    found: gens.group().to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(perms)
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    /// The same generators as a generator set of `S_{N+1}`.
    pub fn generator_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::new(
            GroupSpec::symmetric(self.dimension + 1),
            self.perms.iter().cloned().map(crate::group::GroupElement::Perm).collect(),
        )
    }
}

impl PermutationOracle for ExplicitPermutations {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn generator_count(&self) -> usize {
        self.perms.len()
    }

    fn image(&self, j: usize, x: usize) -> usize {
        self.perms[j].image(x)
    }
}

fn check_index<O: PermutationOracle + ?Sized>(oracle: &O, j: usize) -> Result<()> {
    if j < oracle.generator_count() {
        Ok(())
    } else {
        Err(Error::GeneratorIndex { index: j, count: oracle.generator_count() })
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Checks that every `π_j` is a bijection on `{0, …, N}`.
pub fn validate_oracle<O: PermutationOracle + ?Sized>(oracle: &O) -> Result<()> {
    let points = oracle.dimension() + 1;
    for j in 0..oracle.generator_count() {
        let mut seen = vec![false; points];
        for x in 0..points {
            let y = oracle.image(j, x);
            if y >= points || std::mem::replace(&mut seen[y], true) {
                return Err(Error::Consistency(format!("generator {j} is not a bijection")));
            }
        }
    }
    Ok(())
}

/// `r_def(π_j) v`, i.e. `(r_def v)[π(x)] = v[x]`.
pub fn defining_action<O: PermutationOracle + ?Sized>(oracle: &O, j: usize, v: &DVector<f64>) -> Result<DVector<f64>> {
    check_index(oracle, j)?;
    check_len(oracle.dimension() + 1, v.len())?;
    let mut out = DVector::zeros(v.len());
    for x in 0..v.len() {
        out[oracle.image(j, x)] = v[x];
    }
    Ok(out)
}

/// `H = I − 2|w⟩⟨w|` with `w ∝ e_N − u`, mapping `e_N` to the uniform
/// vector `u` on `N + 1` points.
#[derive(Debug, Clone)]
pub struct EmbeddingIsometry {
    w: DVector<f64>,
}

impl EmbeddingIsometry {
    pub fn new(n: usize) -> Self {
        let points = n + 1;
        let u = 1.0 / (points as f64).sqrt();
        let mut w = DVector::from_element(points, -u);
        w[n] += 1.0;
        let norm = w.norm();
        EmbeddingIsometry { w: w.unscale(norm) }
    }

    pub fn dimension(&self) -> usize {
        self.w.len() - 1
    }

    pub fn apply_in_place(&self, v: &mut [f64]) {
        let overlap: f64 = self.w.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        for (x, w) in v.iter_mut().zip(self.w.iter()) {
            *x -= 2.0 * overlap * w;
        }
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        let mut out = v.clone();
        self.apply_in_place(out.as_mut_slice());
        out
    }

    /// `H Y H` for a square `(N+1) × (N+1)` matrix, by rank-one updates.
    pub fn conjugate(&self, y: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = y.clone();
        self.conjugate_in_place(&mut out);
        out
    }

    /// `Y ← H Y H = Y − w aᵀ − b wᵀ` with `a = 2(Yᵀw − c w)`,
    /// `b = 2(Y w − c w)`, `c = wᵀ Y w`; one pass over `Y`.
    pub fn conjugate_in_place(&self, y: &mut DMatrix<f64>) {
        let w = &self.w;
        let yw = &*y * w;
        let wy = y.tr_mul(w);
        let c = w.dot(&yw);
        let a = (wy - w * c) * 2.0;
        let b = (yw - w * c) * 2.0;
        let p = w.len();
        for (j, col) in y.as_mut_slice().chunks_exact_mut(p).enumerate() {
            let (aj, wj) = (a[j], w[j]);
            for ((yij, wi), bi) in col.iter_mut().zip(w.iter()).zip(b.iter()) {
                *yij -= wi * aj + bi * wj;
            }
        }
    }
}

/// `H v` on `N + 1` coordinates.
pub fn embedding_unitary_apply(n: usize, v: &DVector<f64>) -> Result<DVector<f64>> {
    check_len(n + 1, v.len())?;
    Ok(EmbeddingIsometry::new(n).apply(v))
}

/// `r_{(N,1)}(π_j) u` for `u ∈ ℝ^N`.
pub fn standard_rep_apply<O: PermutationOracle + ?Sized>(
    oracle: &O,
    j: usize,
    u: &DVector<f64>,
) -> Result<DVector<f64>> {
    let iso = EmbeddingIsometry::new(oracle.dimension());
    standard_rep_apply_with(oracle, &iso, j, u)
}

fn standard_rep_apply_with<O: PermutationOracle + ?Sized>(
    oracle: &O,
    iso: &EmbeddingIsometry,
    j: usize,
    u: &DVector<f64>,
) -> Result<DVector<f64>> {
    let n = oracle.dimension();
    check_len(n, u.len())?;
    let mut padded = u.clone().insert_row(n, 0.0);
    iso.apply_in_place(padded.as_mut_slice());
    let mut moved = defining_action(oracle, j, &padded)?;
    iso.apply_in_place(moved.as_mut_slice());
    let leak = moved[n].abs();
    if leak > LEAKAGE_ERROR * u.norm().max(1.0) {
        return Err(Error::Consistency(format!("generator {j} leaks {leak:e} out of the standard subspace")));
    }
    Ok(moved.remove_row(n))
}

/// Dense `N × N` matrix of `r_{(N,1)}(π_j)`, column by column.
pub fn standard_rep_matrix<O: PermutationOracle + ?Sized>(oracle: &O, j: usize) -> Result<DMatrix<f64>> {
    let n = oracle.dimension();
    let iso = EmbeddingIsometry::new(n);
    let mut m = DMatrix::zeros(n, n);
    for c in 0..n {
        let e = DVector::from_fn(n, |k, _| if k == c { 1.0 } else { 0.0 });
        m.set_column(c, &standard_rep_apply_with(oracle, &iso, j, &e)?);
    }
    Ok(m)
}

/// `ℰ(X) = (1/D) Σ_j r_{(N,1)}(π_j) X r_{(N,1)}(π_j)ᵀ`, applied in the
/// defining representation: `ℰ(X) = P H [(1/D) Σ_j R_j (H X̃ H) R_jᵀ] H Pᵀ`.
/// Per application: two Householder conjugations and `D` index shuffles.
pub struct StandardRepChannel<'a, O: ?Sized> {
    oracle: &'a O,
    generators: Vec<usize>,
    /// `images[k][x] = π_{generators[k]}(x)`, read once from the oracle.
    images: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
    iso: EmbeddingIsometry,
}

impl<'a, O: PermutationOracle + ?Sized> StandardRepChannel<'a, O> {
    pub fn new(oracle: &'a O, generators: Vec<usize>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for &j in &generators {
            check_index(oracle, j)?;
        }
        validate_oracle(oracle)?;
        let points = oracle.dimension() + 1;
        let images: Vec<Vec<usize>> =
            generators.iter().map(|&j| (0..points).map(|x| oracle.image(j, x)).collect()).collect();
        let inverses = images
            .iter()
            .map(|im| {
                let mut inv = vec![0; points];
                for (x, &y) in im.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        let iso = EmbeddingIsometry::new(oracle.dimension());
        Ok(StandardRepChannel { oracle, generators, images, inverses, iso })
    }

    /// The same channel with explicit Kraus matrices, for small `N`.
    pub fn to_dense(&self) -> Result<ExpanderChannel> {
        let kraus = self
            .generators
            .iter()
            .map(|&j| standard_rep_matrix(self.oracle, j).map(|m| m.map(Complex64::from)))
            .collect::<Result<Vec<_>>>()?;
        ExpanderChannel::from_unitaries(kraus)
    }

    fn shuffle_sum(&self, y: &DMatrix<f64>, adjoint: bool) -> DMatrix<f64> {
        // (R Y Rᵀ)[c, d] = Y[π⁻¹(c), π⁻¹(d)] and (Rᵀ Y R)[a, b] = Y[π(a), π(b)]
        gather_sum(y.as_slice(), y.nrows(), if adjoint { &self.images } else { &self.inverses })
    }

    fn apply_impl(&self, x: &DMatrix<f64>, adjoint: bool) -> DMatrix<f64> {
        let n = self.oracle.dimension();
        let mut y = DMatrix::zeros(n + 1, n + 1);
        y.view_mut((0, 0), (n, n)).copy_from(x);
        self.iso.conjugate_in_place(&mut y);
        let mut z = self.shuffle_sum(&y, adjoint);
        self.iso.conjugate_in_place(&mut z);
        z.view((0, 0), (n, n)).into_owned()
    }
}

impl<O: PermutationOracle + ?Sized> ChannelMap<f64> for StandardRepChannel<'_, O> {
    fn dim(&self) -> usize {
        self.oracle.dimension()
    }

    fn degree(&self) -> usize {
        self.generators.len()
    }

    fn apply_operator(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        self.apply_impl(x, false)
    }

    fn apply_adjoint_operator(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        self.apply_impl(x, true)
    }
}

/// `Z[c, d] = (1/D) Σ_k Y[σ_k(c), σ_k(d)]` for column-major `Y`.
fn gather_sum(src: &[f64], points: usize, perms: &[Vec<usize>]) -> DMatrix<f64> {
    let mut z = DMatrix::zeros(points, points);
    let dst = z.as_mut_slice();
    for sigma in perms {
        for (d, to) in dst.chunks_exact_mut(points).enumerate() {
            let from = &src[sigma[d] * points..(sigma[d] + 1) * points];
            for (t, &sc) in to.iter_mut().zip(sigma) {
                *t += from[sc];
            }
        }
    }
    z.scale_mut(1.0 / perms.len() as f64);
    z
}

/// `Y ← Π Y Π` with `Π = I − |u⟩⟨u|`: subtract row and column means.
fn project_off_uniform(y: &mut DMatrix<f64>) {
    let p = y.nrows() as f64;
    let col_means: Vec<f64> = y.column_iter().map(|c| c.sum() / p).collect();
    let row_means: Vec<f64> = y.row_iter().map(|r| r.sum() / p).collect();
    let grand = col_means.iter().sum::<f64>() / p;
    for (col, cm) in y.column_iter_mut().zip(&col_means) {
        for (yij, rm) in col.into_iter().zip(&row_means) {
            *yij += grand - cm - rm;
        }
    }
}

/// The channel transported by the isometry `V = H Pᵀ`. Since `V V† = Π`
/// and permutations commute with `Π`, `V ℰ(X) V† = S(V X V†)` with
/// `S(Y) = (1/D) Σ_j R_j Y R_jᵀ`. So `Y ↦ S(Π Y Π)` on `(N+1)²`-vectors has
/// the nonzero singular values of `ℰ`, its fixed vector `vec(Π)/√N` is the
/// image of `vec(I)/√N`, and each step skips both Householder conjugations.
struct Embedded<'c, 'a, O: ?Sized>(&'c StandardRepChannel<'a, O>);

impl<O: PermutationOracle + ?Sized> LinearMap<f64> for Embedded<'_, '_, O> {
    fn dim(&self) -> usize {
        (self.0.oracle.dimension() + 1).pow(2)
    }

    fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        let p = self.0.oracle.dimension() + 1;
        let mut y = DMatrix::from_column_slice(p, p, v.as_slice());
        project_off_uniform(&mut y);
        let z = gather_sum(y.as_slice(), p, &self.0.inverses);
        DVector::from_vec(z.data.into())
    }

    fn apply_adjoint(&self, v: &DVector<f64>) -> Option<DVector<f64>> {
        let p = self.0.oracle.dimension() + 1;
        let mut z = gather_sum(v.as_slice(), p, &self.0.images);
        project_off_uniform(&mut z);
        Some(DVector::from_vec(z.data.into()))
    }
}

/// Matrix-free `λ₂` of the standard-irrep channel built from `gens`
/// (indices into the oracle), iterating on real `(N+1) × (N+1)` matrices
/// in the embedded frame. The realization is real, so the real and complex
/// top singular values agree.
pub fn standard_channel_lambda2<O: PermutationOracle + ?Sized>(
    oracle: &O,
    gens: &[usize],
    opts: &PowerOptions,
    max_n: usize,
) -> Result<NormEstimate> {
    let n = oracle.dimension();
    if n < 2 {
        return Err(Error::InvalidGroup(format!("standard-irrep expander needs N > 1, got {n}")));
    }
    if n > max_n {
        return Err(Error::DenseCapExceeded { dim: n, cap: max_n });
    }
    let channel = StandardRepChannel::new(oracle, gens.to_vec())?;
    let p = n + 1;
    let mut pi = DMatrix::identity(p, p);
    project_off_uniform(&mut pi);
    let fixed = DVector::from_vec(pi.data.into()).unscale((n as f64).sqrt());
    operator_norm(&deflate(Embedded(&channel), fixed)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::quantum_lambda2_dense;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perms(n_points: usize, cycles: &[&str]) -> ExplicitPermutations {
        let g = GroupSpec::symmetric(n_points);
        ExplicitPermutations::new(
            cycles.iter().map(|c| g.parse_element(c).unwrap().as_permutation().unwrap().clone()).collect(),
        )
        .unwrap()
    }

    fn random_vec(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
        DVector::from_fn(n, |_, _| rng.random::<f64>() - 0.5)
    }

    #[test]
    fn defining_action_examples() {
        let o = perms(3, &["()", "(1 2)"]);
        let v = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        assert_eq!(defining_action(&o, 0, &v).unwrap(), v);
        assert_eq!(defining_action(&o, 1, &v).unwrap(), DVector::from_vec(vec![2.0, 1.0, 3.0]));
        assert!(matches!(defining_action(&o, 2, &v), Err(Error::GeneratorIndex { .. })));
    }

    #[test]
    fn defining_action_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let n = 50;
        for _ in 0..100 {
            let o = ExplicitPermutations::random(n, 2, &mut rng).unwrap();
            let v = random_vec(n + 1, &mut rng);
            let two_step = defining_action(&o, 1, &defining_action(&o, 0, &v).unwrap()).unwrap();
            let composed = o.permutations()[1].compose(&o.permutations()[0]);
            let direct = ExplicitPermutations::new(vec![composed]).unwrap();
            assert_eq!(defining_action(&direct, 0, &v).unwrap(), two_step);
        }
    }

    #[test]
    fn embedding_examples() {
        let e = DVector::from_fn(5, |k, _| if k == 4 { 1.0 } else { 0.0 });
        let image = embedding_unitary_apply(4, &e).unwrap();
        for x in image.iter() {
            assert_abs_diff_eq!(*x, 1.0 / 5f64.sqrt(), epsilon = 1e-15);
        }
        let h = embedding_unitary_apply(1, &DVector::from_vec(vec![0.0, 1.0])).unwrap();
        assert_abs_diff_eq!(h[0], std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(h[1], std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = random_vec(1001, &mut rng);
        let back = embedding_unitary_apply(1000, &embedding_unitary_apply(1000, &v).unwrap()).unwrap();
        assert!((back - v).amax() <= 1e-12);
        assert!(embedding_unitary_apply(3, &DVector::zeros(3)).is_err());
    }

    #[test]
    fn conjugate_matches_dense_householder() {
        let iso = EmbeddingIsometry::new(6);
        let h = DMatrix::identity(7, 7) - iso.w.clone() * iso.w.transpose() * 2.0;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let y = DMatrix::from_fn(7, 7, |_, _| rng.random::<f64>());
        assert!((iso.conjugate(&y) - &h * &y * &h).amax() <= 1e-13);
    }

    #[test]
    fn identity_generator_acts_trivially() {
        let o = perms(6, &["()"]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random_vec(5, &mut rng);
        assert!((standard_rep_apply(&o, 0, &u).unwrap() - &u).amax() <= 1e-13);
    }

    #[test]
    fn character_is_fixed_points_minus_one() {
        let g = GroupSpec::symmetric(6);
        for p in Permutation::all(6) {
            let o = ExplicitPermutations::new(vec![p.clone()]).unwrap();
            let tr = standard_rep_matrix(&o, 0).unwrap().trace();
            assert_abs_diff_eq!(tr, p.fixed_points() as f64 - 1.0, epsilon = 1e-10);
        }
        assert_eq!(g.order().to_string(), "720");
    }

    #[test]
    fn subspace_invariance_orthogonality_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [10, 100, 1000] {
            let trials = if n == 1000 { 100 } else { 1000 };
            for _ in 0..trials {
                let o = ExplicitPermutations::random(n, 2, &mut rng).unwrap();
                let u = random_vec(n, &mut rng);
                let iso = EmbeddingIsometry::new(n);
                // raw leakage before truncation
                let mut padded = u.clone().insert_row(n, 0.0);
                iso.apply_in_place(padded.as_mut_slice());
                let mut moved = defining_action(&o, 0, &padded).unwrap();
                iso.apply_in_place(moved.as_mut_slice());
                assert!(moved[n].abs() <= 1e-10 * u.norm().max(1.0));

                let a = standard_rep_apply(&o, 0, &u).unwrap();
                assert_abs_diff_eq!(a.norm(), u.norm(), epsilon = 1e-10);
                // r(π)r(σ) = r(πσ)
                let both = standard_rep_apply(&o, 0, &standard_rep_apply(&o, 1, &u).unwrap()).unwrap();
                let prod = o.permutations()[0].compose(&o.permutations()[1]);
                let direct = standard_rep_apply(&ExplicitPermutations::new(vec![prod]).unwrap(), 0, &u).unwrap();
                assert!((both - direct).amax() <= 1e-10);
            }
        }
    }

    /// A non-bijective oracle leaks out of the standard subspace.
    struct Broken;
    impl PermutationOracle for Broken {
        fn dimension(&self) -> usize {
            3
        }
        fn generator_count(&self) -> usize {
            1
        }
        fn image(&self, _j: usize, x: usize) -> usize {
            x.min(2)
        }
    }

    #[test]
    fn broken_oracle_detected() {
        let u = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        assert!(matches!(standard_rep_apply(&Broken, 0, &u), Err(Error::Consistency(_))));
        assert!(StandardRepChannel::new(&Broken, vec![0]).is_err());
    }

    #[test]
    fn matrix_free_channel_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let opts = PowerOptions::default();
        for n in 2..=5 {
            let o = ExplicitPermutations::random(n, 3, &mut rng).unwrap();
            let ch = StandardRepChannel::new(&o, vec![0, 1, 2]).unwrap();
            let dense = ch.to_dense().unwrap();
            let x = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>());
            let via_dense = dense.apply_operator(&x.map(Complex64::from)).map(|z| z.re);
            assert!((ch.apply_operator(&x) - via_dense).amax() <= 1e-12);
            let via_dense_adj = dense.apply_adjoint_operator(&x.map(Complex64::from)).map(|z| z.re);
            assert!((ch.apply_adjoint_operator(&x) - via_dense_adj).amax() <= 1e-12);

            let it = standard_channel_lambda2(&o, &[0, 1, 2], &opts, DEFAULT_MAX_N).unwrap();
            assert_abs_diff_eq!(it.value, quantum_lambda2_dense(&dense).unwrap(), epsilon = 1e-6);
        }
    }

    #[test]
    fn embedded_frame_matches_channel_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let opts = PowerOptions::default();
        for n in [6, 12, 20] {
            let o = ExplicitPermutations::random(n, 3, &mut rng).unwrap();
            let ch = StandardRepChannel::new(&o, vec![0, 1, 2]).unwrap();
            let direct = crate::channel::quantum_lambda2_iterative(&ch, &opts).unwrap();
            let embedded = standard_channel_lambda2(&o, &[0, 1, 2], &opts, DEFAULT_MAX_N).unwrap();
            assert_abs_diff_eq!(direct.value, embedded.value, epsilon = 1e-6);
        }
    }

    #[test]
    fn projection_off_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let p = 7;
        let y = DMatrix::from_fn(p, p, |_, _| rng.random::<f64>());
        let u = DMatrix::from_element(p, p, 1.0 / p as f64);
        let pi = DMatrix::identity(p, p) - u;
        let mut z = y.clone();
        project_off_uniform(&mut z);
        assert!((z - &pi * y * &pi).amax() <= 1e-14);
    }

    #[test]
    fn identity_generators_give_one() {
        let o = perms(6, &["()", "()"]);
        let it = standard_channel_lambda2(&o, &[0, 1], &PowerOptions::default(), DEFAULT_MAX_N).unwrap();
        assert_abs_diff_eq!(it.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn small_n_rejected() {
        let o = perms(2, &["(1 2)"]);
        assert!(standard_channel_lambda2(&o, &[0], &PowerOptions::default(), DEFAULT_MAX_N).is_err());
        let o = perms(5, &["(1 2)"]);
        assert!(matches!(
            standard_channel_lambda2(&o, &[0], &PowerOptions::default(), 3),
            Err(Error::DenseCapExceeded { .. })
        ));
    }
}
