//! Unitary irreps of the supported families, characters, Clebsch–Gordan
//! multiplicities of `V_λ ⊗ V_λ*`, and the group Fourier transform.
//!
//! Realizations:
//! - `S_n`: Young's orthogonal form (real orthogonal, so `r* = r`).
//! - `Z_n`: characters `g ↦ exp(2πi·k·g/n)`, labelled by `k`.
//! - `D_n`: `A1`, `A2` (sign on reflections), `B1`, `B2` (even `n` only,
//!   sign on rotations) and the 2-dimensional `E_j`, `s^f r^k ↦ S^f R(2πjk/n)`
//!   with `S = diag(1, −1)`, `1 ≤ j < n/2`.
//! - products: Kronecker products of factor irreps.

mod partition;
mod qft;
mod young;

pub use partition::{irrep_dimension, Partition};
pub use qft::{left_translation_residual, qft_matrix, verify_left_translation_blocks, QftMatrix, QFT_CAP};
pub use young::{standard_tableaux, Tableau, YoungOrthogonal};

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{split_top_level, GroupElement, GroupSpec};

/// Tolerance on integrality of character inner products.
pub const MULTIPLICITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DihedralIrrep {
    A1,
    A2,
    B1,
    B2,
    E(usize),
}

impl fmt::Display for DihedralIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralIrrep::A1 => write!(f, "A1"),
            DihedralIrrep::A2 => write!(f, "A2"),
            DihedralIrrep::B1 => write!(f, "B1"),
            DihedralIrrep::B2 => write!(f, "B2"),
            DihedralIrrep::E(j) => write!(f, "E{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrepLabel {
    Partition(Partition),
    Character(usize),
    Dihedral(DihedralIrrep),
    Product(Vec<IrrepLabel>),
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Partition(p) => write!(f, "{p}"),
            IrrepLabel::Character(k) => write!(f, "{k}"),
            IrrepLabel::Dihedral(d) => write!(f, "{d}"),
            IrrepLabel::Product(parts) => {
                write!(f, "{{")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl IrrepLabel {
    /// Parses a label in the notation of `group`'s family.
    pub fn parse(group: &GroupSpec, text: &str) -> Result<Self> {
        let t = text.trim();
        let unknown = || Error::UnknownIrrep { label: text.to_string(), group: group.to_string() };
        match group {
            GroupSpec::Symmetric { .. } => Partition::parse(t).map(IrrepLabel::Partition),
            GroupSpec::Cyclic { .. } => {
                let k = t.strip_prefix("k=").unwrap_or(t);
                k.parse().map(IrrepLabel::Character).map_err(|_| unknown())
            }
            GroupSpec::Dihedral { .. } => {
                let kind = match t {
                    "A1" => DihedralIrrep::A1,
                    "A2" => DihedralIrrep::A2,
                    "B1" => DihedralIrrep::B1,
                    "B2" => DihedralIrrep::B2,
                    _ => DihedralIrrep::E(t.strip_prefix('E').and_then(|j| j.parse().ok()).ok_or_else(unknown)?),
                };
                Ok(IrrepLabel::Dihedral(kind))
            }
            GroupSpec::Product { factors } => {
                let inner = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or_else(unknown)?;
                let parts = split_top_level(inner);
                if parts.len() != factors.len() {
                    return Err(unknown());
                }
                factors
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| IrrepLabel::parse(f, p))
                    .collect::<Result<Vec<_>>>()
                    .map(IrrepLabel::Product)
            }
        }
    }
}

#[derive(Debug)]
enum Realization {
    Young(YoungOrthogonal),
    Character { n: usize, k: usize },
    Dihedral { n: usize, kind: DihedralIrrep },
    Product(Vec<IrrepHandle>),
}

/// A labelled irrep together with a deterministic rule `g ↦ r_λ(g)`.
#[derive(Debug, Clone)]
pub struct IrrepHandle {
    group: GroupSpec,
    label: IrrepLabel,
    dim: usize,
    realization: Arc<Realization>,
}

impl PartialEq for IrrepHandle {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.label == other.label
    }
}

impl IrrepHandle {
    pub fn new(group: &GroupSpec, label: IrrepLabel) -> Result<Self> {
        group.validate()?;
        let unknown = || Error::UnknownIrrep { label: label.to_string(), group: group.to_string() };
        let (dim, realization) = match (group, &label) {
            (GroupSpec::Symmetric { n }, IrrepLabel::Partition(p)) => {
                if p.size() != *n {
                    return Err(unknown());
                }
                let yor = YoungOrthogonal::new(p);
                (yor.dim(), Realization::Young(yor))
            }
            (GroupSpec::Cyclic { n }, IrrepLabel::Character(k)) if k < n => {
                (1, Realization::Character { n: *n, k: *k })
            }
            (GroupSpec::Dihedral { n }, IrrepLabel::Dihedral(kind)) => {
                let dim = match kind {
                    DihedralIrrep::A1 | DihedralIrrep::A2 => 1,
                    DihedralIrrep::B1 | DihedralIrrep::B2 if n % 2 == 0 => 1,
                    DihedralIrrep::E(j) if *j >= 1 && 2 * j < *n => 2,
                    _ => return Err(unknown()),
                };
                (dim, Realization::Dihedral { n: *n, kind: *kind })
            }
            (GroupSpec::Product { factors }, IrrepLabel::Product(labels)) if factors.len() == labels.len() => {
                let parts = factors
                    .iter()
                    .zip(labels)
                    .map(|(f, l)| IrrepHandle::new(f, l.clone()))
                    .collect::<Result<Vec<_>>>()?;
                (parts.iter().map(|h| h.dim).product(), Realization::Product(parts))
            }
            _ => return Err(unknown()),
        };
        Ok(IrrepHandle { group: group.clone(), label, dim, realization: Arc::new(realization) })
    }

    pub fn parse(group: &GroupSpec, text: &str) -> Result<Self> {
        IrrepHandle::new(group, IrrepLabel::parse(group, text)?)
    }

    pub fn trivial(group: &GroupSpec) -> Result<Self> {
        let label = match group {
            GroupSpec::Symmetric { n } => IrrepLabel::Partition(Partition::row(*n)),
            GroupSpec::Cyclic { .. } => IrrepLabel::Character(0),
            GroupSpec::Dihedral { .. } => IrrepLabel::Dihedral(DihedralIrrep::A1),
            GroupSpec::Product { factors } => IrrepLabel::Product(
                factors.iter().map(|f| IrrepHandle::trivial(f).map(|h| h.label)).collect::<Result<_>>()?,
            ),
        };
        IrrepHandle::new(group, label)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn label(&self) -> &IrrepLabel {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        match &*self.realization {
            Realization::Young(y) => y.shape().len() == 1,
            Realization::Character { k, .. } => *k == 0,
            Realization::Dihedral { kind, .. } => *kind == DihedralIrrep::A1,
            Realization::Product(parts) => parts.iter().all(|p| p.is_trivial()),
        }
    }

    /// True when every matrix of the realization is real.
    pub fn is_real(&self) -> bool {
        match &*self.realization {
            Realization::Young(_) | Realization::Dihedral { .. } => true,
            Realization::Character { n, k } => (2 * k) % n == 0,
            Realization::Product(parts) => parts.iter().all(|p| p.is_real()),
        }
    }

    /// `r_λ(g)`, a `d_λ × d_λ` unitary.
    pub fn matrix(&self, g: &GroupElement) -> Result<DMatrix<Complex64>> {
        if !self.group.contains(g) {
            return Err(Error::GroupMismatch { expected: self.group.to_string(), found: g.to_string() });
        }
        Ok(self.matrix_unchecked(g))
    }

    fn matrix_unchecked(&self, g: &GroupElement) -> DMatrix<Complex64> {
        match (&*self.realization, g) {
            (Realization::Young(yor), GroupElement::Perm(p)) => yor.matrix(p).map(|x| Complex64::new(x, 0.0)),
            (Realization::Character { n, k }, GroupElement::Residue { value, .. }) => {
                let phase = 2.0 * PI * ((k * value) % n) as f64 / *n as f64;
                DMatrix::from_element(1, 1, Complex64::from_polar(1.0, phase))
            }
            (Realization::Dihedral { n, kind }, GroupElement::Dihedral { reflection, rotation, .. }) => {
                dihedral_matrix(*n, *kind, *reflection, *rotation)
            }
            (Realization::Product(parts), GroupElement::Tuple(elems)) => {
                parts.iter().zip(elems).fold(DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)), |acc, (h, e)| {
                    acc.kronecker(&h.matrix_unchecked(e))
                })
            }
            _ => unreachable!("membership checked by caller"),
        }
    }

    /// `χ_λ(g) = tr r_λ(g)`.
    pub fn character(&self, g: &GroupElement) -> Result<Complex64> {
        Ok(self.matrix(g)?.trace())
    }
}

fn dihedral_matrix(n: usize, kind: DihedralIrrep, reflection: bool, rotation: usize) -> DMatrix<Complex64> {
    let sign = |odd: bool| if odd { -1.0 } else { 1.0 };
    let scalar = |x: f64| DMatrix::from_element(1, 1, Complex64::new(x, 0.0));
    match kind {
        DihedralIrrep::A1 => scalar(1.0),
        DihedralIrrep::A2 => scalar(sign(reflection)),
        DihedralIrrep::B1 => scalar(sign(rotation % 2 == 1)),
        DihedralIrrep::B2 => scalar(sign((rotation % 2 == 1) ^ reflection)),
        DihedralIrrep::E(j) => {
            let theta = 2.0 * PI * ((j * rotation) % n) as f64 / n as f64;
            let (s, c) = theta.sin_cos();
            let f = sign(reflection);
            // S^f · R(θ) with S = diag(1, −1)
            DMatrix::from_row_slice(2, 2, &[c, -s, f * s, f * c]).map(|x| Complex64::new(x, 0.0))
        }
    }
}

/// A complete set of inequivalent irreps, in canonical order (trivial first).
pub fn list_irreps(group: &GroupSpec, cap: usize) -> Result<Vec<IrrepHandle>> {
    group.validate()?;
    group.order_within(cap)?;
    let labels = irrep_labels(group);
    labels.into_iter().map(|l| IrrepHandle::new(group, l)).collect()
}

fn irrep_labels(group: &GroupSpec) -> Vec<IrrepLabel> {
    match group {
        GroupSpec::Symmetric { n } => Partition::all(*n).into_iter().map(IrrepLabel::Partition).collect(),
        GroupSpec::Cyclic { n } => (0..*n).map(IrrepLabel::Character).collect(),
        GroupSpec::Dihedral { n } => {
            let mut v = vec![DihedralIrrep::A1, DihedralIrrep::A2];
            if n % 2 == 0 {
                v.extend([DihedralIrrep::B1, DihedralIrrep::B2]);
            }
            v.extend((1..).take_while(|j| 2 * j < *n).map(DihedralIrrep::E));
            v.into_iter().map(IrrepLabel::Dihedral).collect()
        }
        GroupSpec::Product { factors } => {
            let mut acc: Vec<Vec<IrrepLabel>> = vec![Vec::new()];
            for f in factors {
                let labels = irrep_labels(f);
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        labels.iter().map(move |l| {
                            let mut p = prefix.clone();
                            p.push(l.clone());
                            p
                        })
                    })
                    .collect();
            }
            acc.into_iter().map(IrrepLabel::Product).collect()
        }
    }
}

/// `Σ d_λ² = |G|` for the given list.
pub fn completeness_of(irreps: &[IrrepHandle], group: &GroupSpec) -> bool {
    let total: BigUint = irreps.iter().map(|h| BigUint::from(h.dim()).pow(2)).sum();
    total == group.order()
}

pub fn irrep_completeness_check(group: &GroupSpec, cap: usize) -> Result<bool> {
    Ok(completeness_of(&list_irreps(group, cap)?, group))
}

/// Characters of every irrep at every element.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    elements: Vec<GroupElement>,
    irreps: Vec<IrrepHandle>,
    /// `values[irrep][element]`
    values: Vec<Vec<Complex64>>,
}

impl CharacterTable {
    pub fn new(group: &GroupSpec, cap: usize) -> Result<Self> {
        let irreps = list_irreps(group, cap)?;
        let elements = group.enumerate(cap)?;
        let values = irreps.iter().map(|h| elements.iter().map(|g| h.matrix_unchecked(g).trace()).collect()).collect();
        Ok(CharacterTable { elements, irreps, values })
    }

    pub fn irreps(&self) -> &[IrrepHandle] {
        &self.irreps
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn values(&self, irrep: usize) -> &[Complex64] {
        &self.values[irrep]
    }

    pub fn position(&self, label: &IrrepLabel) -> Option<usize> {
        self.irreps.iter().position(|h| h.label() == label)
    }

    /// `⟨χ_a, χ_b⟩ = (1/|G|) Σ_g χ_a(g)* χ_b(g)`.
    pub fn inner_product(&self, a: usize, b: usize) -> Complex64 {
        let sum: Complex64 = self.values[a].iter().zip(&self.values[b]).map(|(x, y)| x.conj() * y).sum();
        sum / self.elements.len() as f64
    }

    /// Multiplicities `m_ν` of each irrep `ν` in `V_λ ⊗ V_λ*` (only nonzero
    /// ones, in table order), from
    /// `m_ν = (1/|G|) Σ_g χ_ν(g)* χ_λ(g) χ_λ(g)*`.
    pub fn tensor_multiplicities(&self, lambda: usize) -> Result<Vec<(IrrepLabel, usize)>> {
        let order = self.elements.len() as f64;
        let mut out = Vec::new();
        for (nu, chi_nu) in self.values.iter().enumerate() {
            let m: Complex64 =
                chi_nu.iter().zip(&self.values[lambda]).map(|(x, l)| x.conj() * l.norm_sqr()).sum::<Complex64>()
                    / order;
            let rounded = m.re.round();
            if (m.re - rounded).abs() > MULTIPLICITY_TOL || m.im.abs() > MULTIPLICITY_TOL || rounded < 0.0 {
                return Err(Error::Consistency(format!(
                    "multiplicity of {} in {}⊗{}* is {m}, not a non-negative integer",
                    self.irreps[nu].label(),
                    self.irreps[lambda].label(),
                    self.irreps[lambda].label(),
                )));
            }
            if rounded > 0.0 {
                out.push((self.irreps[nu].label().clone(), rounded as usize));
            }
        }
        Ok(out)
    }
}

/// Multiplicities of irreps in `V_λ ⊗ V_λ*` for a single handle.
pub fn tensor_multiplicities(h: &IrrepHandle, cap: usize) -> Result<Vec<(IrrepLabel, usize)>> {
    let table = CharacterTable::new(h.group(), cap)?;
    let idx = table
        .position(h.label())
        .ok_or_else(|| Error::Consistency(format!("{} missing from irrep list", h.label())))?;
    table.tensor_multiplicities(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP as CAP;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn frob(m: &DMatrix<Complex64>) -> f64 {
        m.norm()
    }

    fn check_homomorphism(group: &GroupSpec, pairs: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for h in list_irreps(group, CAP).unwrap() {
            let e = h.matrix(&group.identity()).unwrap();
            assert!(frob(&(e - DMatrix::identity(h.dim(), h.dim()))) <= 1e-12);
            for _ in 0..pairs {
                let a = group.random_element(&mut rng);
                let b = group.random_element(&mut rng);
                let ra = h.matrix(&a).unwrap();
                let rb = h.matrix(&b).unwrap();
                let rab = h.matrix(&a.multiply(&b).unwrap()).unwrap();
                assert!(frob(&(&ra * &rb - rab)) <= 1e-10, "{} {}", group, h.label());
                let unit = ra.adjoint() * &ra - DMatrix::identity(h.dim(), h.dim());
                assert!(frob(&unit) <= 1e-10);
            }
        }
    }

    #[test]
    fn homomorphism_and_unitarity() {
        check_homomorphism(&GroupSpec::symmetric(4), 500, 1);
        check_homomorphism(&GroupSpec::symmetric(5), 500, 2);
        check_homomorphism(&GroupSpec::symmetric(7), 40, 3);
        check_homomorphism(&GroupSpec::cyclic(12), 500, 4);
        check_homomorphism(&GroupSpec::dihedral(6), 500, 5);
        check_homomorphism(&GroupSpec::dihedral(7), 500, 6);
        check_homomorphism(&GroupSpec::product(vec![GroupSpec::symmetric(3), GroupSpec::cyclic(4)]), 100, 7);
    }

    #[test]
    fn s3_all_pairs_homomorphism() {
        let g = GroupSpec::symmetric(3);
        let h = IrrepHandle::parse(&g, "(2,1)").unwrap();
        let elems = g.enumerate(CAP).unwrap();
        for a in &elems {
            for b in &elems {
                let lhs = h.matrix(a).unwrap() * h.matrix(b).unwrap();
                let rhs = h.matrix(&a.multiply(b).unwrap()).unwrap();
                assert!(frob(&(lhs - rhs)) <= 1e-12);
            }
        }
    }

    #[test]
    fn yor_matrices_are_real() {
        let g = GroupSpec::symmetric(5);
        for h in list_irreps(&g, CAP).unwrap() {
            assert!(h.is_real());
            for x in g.enumerate(CAP).unwrap() {
                let m = h.matrix(&x).unwrap();
                assert!(m.iter().all(|z| z.im.abs() <= 1e-12));
            }
        }
    }

    #[test]
    fn list_examples() {
        let s3 = list_irreps(&GroupSpec::symmetric(3), CAP).unwrap();
        let labels: Vec<String> = s3.iter().map(|h| h.label().to_string()).collect();
        assert_eq!(labels, ["(3)", "(2,1)", "(1,1,1)"]);
        assert_eq!(s3.iter().map(|h| h.dim()).collect::<Vec<_>>(), [1, 2, 1]);
        let z4 = list_irreps(&GroupSpec::cyclic(4), CAP).unwrap();
        assert_eq!(z4.len(), 4);
        assert!(z4.iter().all(|h| h.dim() == 1));
        let s5 = list_irreps(&GroupSpec::symmetric(5), CAP).unwrap();
        assert_eq!(s5.len(), 7);
        assert_eq!(s5.iter().map(|h| h.dim() * h.dim()).sum::<usize>(), 120);
        assert!(s3[0].is_trivial() && !s3[1].is_trivial());
    }

    #[test]
    fn completeness() {
        assert!(irrep_completeness_check(&GroupSpec::symmetric(4), CAP).unwrap());
        assert!(irrep_completeness_check(&GroupSpec::cyclic(9), CAP).unwrap());
        assert!(irrep_completeness_check(&GroupSpec::dihedral(8), CAP).unwrap());
        assert!(irrep_completeness_check(&GroupSpec::dihedral(9), CAP).unwrap());
        let g = GroupSpec::symmetric(4);
        let mut list = list_irreps(&g, CAP).unwrap();
        list.remove(2);
        assert!(!completeness_of(&list, &g));
    }

    #[test]
    fn specific_matrices_and_characters() {
        let z6 = GroupSpec::cyclic(6);
        let h = IrrepHandle::parse(&z6, "1").unwrap();
        let m = h.matrix(&z6.parse_element("1").unwrap()).unwrap();
        assert_abs_diff_eq!(m[(0, 0)].re, (PI / 3.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 0)].im, (PI / 3.0).sin(), epsilon = 1e-15);

        let s3 = GroupSpec::symmetric(3);
        let triv = IrrepHandle::trivial(&s3).unwrap();
        assert_eq!(triv.matrix(&s3.parse_element("(1 2)").unwrap()).unwrap()[(0, 0)].re, 1.0);
        let sign = IrrepHandle::parse(&s3, "(1,1,1)").unwrap();
        assert_abs_diff_eq!(sign.character(&s3.parse_element("(1 2)").unwrap()).unwrap().re, -1.0);

        // standard rep of S_4: χ(π) = fix(π) − 1
        let s4 = GroupSpec::symmetric(4);
        let std = IrrepHandle::parse(&s4, "(3,1)").unwrap();
        for g in s4.enumerate(CAP).unwrap() {
            let fix = g.as_permutation().unwrap().fixed_points() as f64;
            assert_abs_diff_eq!(std.character(&g).unwrap().re, fix - 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(std.character(&g).unwrap().im, 0.0);
        }
        assert_eq!(std.character(&s4.identity()).unwrap().re, 3.0);
    }

    #[test]
    fn bad_labels() {
        let s3 = GroupSpec::symmetric(3);
        assert!(IrrepHandle::parse(&s3, "(3,1)").is_err());
        assert!(IrrepHandle::parse(&GroupSpec::cyclic(3), "3").is_err());
        assert!(IrrepHandle::parse(&GroupSpec::dihedral(5), "B1").is_err());
        assert!(IrrepHandle::parse(&GroupSpec::dihedral(5), "E3").is_err());
        assert!(IrrepHandle::parse(&GroupSpec::dihedral(5), "E2").is_ok());
        let h = IrrepHandle::parse(&s3, "(2,1)").unwrap();
        assert!(h.matrix(&GroupSpec::symmetric(4).identity()).is_err());
    }

    #[test]
    fn schur_orthogonality() {
        for g in [
            GroupSpec::symmetric(3),
            GroupSpec::symmetric(4),
            GroupSpec::symmetric(5),
            GroupSpec::cyclic(12),
            GroupSpec::dihedral(6),
        ] {
            let t = CharacterTable::new(&g, CAP).unwrap();
            for a in 0..t.irreps().len() {
                for b in 0..t.irreps().len() {
                    let ip = t.inner_product(a, b);
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!((ip - Complex64::new(expected, 0.0)).norm() <= 1e-8, "{g} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn multiplicities() {
        let s3 = GroupSpec::symmetric(3);
        let std = IrrepHandle::parse(&s3, "(2,1)").unwrap();
        let m = tensor_multiplicities(&std, CAP).unwrap();
        let shown: Vec<(String, usize)> = m.iter().map(|(l, k)| (l.to_string(), *k)).collect();
        assert_eq!(shown, [("(3)".to_string(), 1), ("(2,1)".to_string(), 1), ("(1,1,1)".to_string(), 1)]);
        let triv = IrrepHandle::trivial(&s3).unwrap();
        let m = tensor_multiplicities(&triv, CAP).unwrap();
        assert_eq!(m, vec![(triv.label().clone(), 1)]);

        for g in [GroupSpec::symmetric(4), GroupSpec::dihedral(7), GroupSpec::cyclic(5)] {
            let t = CharacterTable::new(&g, CAP).unwrap();
            let trivial = IrrepHandle::trivial(&g).unwrap();
            for (i, h) in t.irreps().iter().enumerate() {
                let m = t.tensor_multiplicities(i).unwrap();
                let m_triv = m.iter().find(|(l, _)| l == trivial.label()).map(|p| p.1);
                assert_eq!(m_triv, Some(1));
                let total: usize = m.iter().map(|(l, k)| k * IrrepHandle::new(&g, l.clone()).unwrap().dim()).sum();
                assert_eq!(total, h.dim() * h.dim());
            }
        }
    }
}
