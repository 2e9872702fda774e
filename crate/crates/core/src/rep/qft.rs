//! Dense group Fourier transform
//! `U = Σ_{g,λ,i,j} √(d_λ/|G|) r_λ(g)_{ij} |λ,i,j⟩⟨g|`.
//!
//! Rows are ordered by irrep (in [`list_irreps`] order), then `i`, then `j`;
//! columns follow the canonical element order.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{list_irreps, IrrepHandle};
use crate::error::{Error, Result};
use crate::group::{ElementIndex, GroupElement, GroupSpec};

/// Largest group for which the dense transform is built.
pub const QFT_CAP: usize = 2000;

#[derive(Debug, Clone)]
pub struct QftMatrix {
    pub matrix: DMatrix<Complex64>,
    pub irreps: Vec<IrrepHandle>,
    /// `(irrep index, i, j)` for each row.
    pub rows: Vec<(usize, usize, usize)>,
    index: ElementIndex,
}

impl QftMatrix {
    pub fn elements(&self) -> &[GroupElement] {
        self.index.elements()
    }

    /// `‖U†U − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        (self.matrix.adjoint() * &self.matrix - DMatrix::identity(n, n)).norm()
    }

    /// First row of each irrep block.
    fn block_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.irreps.len());
        let mut at = 0;
        for h in &self.irreps {
            offsets.push(at);
            at += h.dim() * h.dim();
        }
        offsets
    }

    /// `Σ_λ |λ⟩⟨λ| ⊗ r_λ(x) ⊗ I_{d_λ}` in the row basis.
    pub fn block_diagonal(&self, x: &GroupElement) -> Result<DMatrix<Complex64>> {
        let n = self.matrix.nrows();
        let mut out = DMatrix::zeros(n, n);
        for (h, off) in self.irreps.iter().zip(self.block_offsets()) {
            let r = h.matrix(x)?;
            let d = h.dim();
            out.view_mut((off, off), (d * d, d * d)).copy_from(&r.kronecker(&DMatrix::identity(d, d)));
        }
        Ok(out)
    }

    /// `U L_x U†`, with `L_x|g⟩ = |xg⟩`.
    pub fn conjugated_left_translation(&self, x: &GroupElement) -> Result<DMatrix<Complex64>> {
        let n = self.matrix.ncols();
        let mut ul = DMatrix::zeros(self.matrix.nrows(), n);
        for (c, g) in self.index.elements().iter().enumerate() {
            let target = self
                .index
                .position(&x.multiply(g)?)
                .ok_or_else(|| Error::Consistency("product left the group".into()))?;
            ul.set_column(c, &self.matrix.column(target));
        }
        Ok(ul * self.matrix.adjoint())
    }
}

pub fn qft_matrix(group: &GroupSpec, cap: usize) -> Result<QftMatrix> {
    let order = group.order_within(cap.min(QFT_CAP))?;
    let index = ElementIndex::new(group, order)?;
    let irreps = list_irreps(group, order)?;
    let mut rows = Vec::with_capacity(order);
    for (l, h) in irreps.iter().enumerate() {
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                rows.push((l, i, j));
            }
        }
    }
    if rows.len() != order {
        return Err(Error::Consistency(format!(
            "irreps of {group} give {} Fourier rows for {order} elements",
            rows.len()
        )));
    }
    let mut matrix = DMatrix::zeros(order, order);
    for (c, g) in index.elements().iter().enumerate() {
        let mut r = 0;
        for h in &irreps {
            let scale = (h.dim() as f64 / order as f64).sqrt();
            let m = h.matrix(g)?;
            for i in 0..h.dim() {
                for j in 0..h.dim() {
                    matrix[(r, c)] = m[(i, j)] * scale;
                    r += 1;
                }
            }
        }
    }
    Ok(QftMatrix { matrix, irreps, rows, index })
}

/// Frobenius residual `‖U L_x U† − Σ_λ |λ⟩⟨λ| ⊗ r_λ(x) ⊗ I‖_F`.
pub fn verify_left_translation_blocks(group: &GroupSpec, x: &GroupElement, cap: usize) -> Result<f64> {
    let qft = qft_matrix(group, cap)?;
    left_translation_residual(&qft, x)
}

pub fn left_translation_residual(qft: &QftMatrix, x: &GroupElement) -> Result<f64> {
    Ok((qft.conjugated_left_translation(x)? - qft.block_diagonal(x)?).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const CAP: usize = 100_000;

    #[test]
    fn z2_is_hadamard() {
        let q = qft_matrix(&GroupSpec::cyclic(2), CAP).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = DMatrix::from_row_slice(2, 2, &[h, h, h, -h]).map(|x| Complex64::new(x, 0.0));
        assert!((q.matrix - expected).norm() <= 1e-15);
    }

    #[test]
    fn cyclic_is_dft() {
        let n = 7;
        let q = qft_matrix(&GroupSpec::cyclic(n), CAP).unwrap();
        for k in 0..n {
            for g in 0..n {
                let phase = 2.0 * std::f64::consts::PI * (k * g) as f64 / n as f64;
                let expected = Complex64::from_polar(1.0 / (n as f64).sqrt(), phase);
                assert!((q.matrix[(k, g)] - expected).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn unitarity() {
        for g in [GroupSpec::symmetric(3), GroupSpec::symmetric(4), GroupSpec::dihedral(5)] {
            assert!(qft_matrix(&g, CAP).unwrap().unitarity_residual() <= 1e-9);
        }
    }

    #[test]
    fn left_translation_blocks() {
        let s3 = GroupSpec::symmetric(3);
        assert!(verify_left_translation_blocks(&s3, &s3.identity(), CAP).unwrap() <= 1e-9);
        let c = s3.parse_element("(1 2 3)").unwrap();
        assert!(verify_left_translation_blocks(&s3, &c, CAP).unwrap() <= 1e-9);
        let z8 = GroupSpec::cyclic(8);
        let x = z8.parse_element("3").unwrap();
        assert!(verify_left_translation_blocks(&z8, &x, CAP).unwrap() <= 1e-9);
    }

    #[test]
    fn uniform_state_maps_to_trivial_row() {
        let g = GroupSpec::symmetric(4);
        let q = qft_matrix(&g, CAP).unwrap();
        let u = nalgebra::DVector::from_element(24, Complex64::new(1.0 / 24f64.sqrt(), 0.0));
        let image = &q.matrix * u;
        assert_abs_diff_eq!(image[0].re, 1.0, epsilon = 1e-12);
        assert!(image.rows(1, 23).norm() <= 1e-12);
    }

    #[test]
    fn caps() {
        assert!(matches!(qft_matrix(&GroupSpec::symmetric(7), CAP), Err(Error::TooLarge { .. })));
        assert!(qft_matrix(&GroupSpec::symmetric(4), 10).is_err());
    }
}
