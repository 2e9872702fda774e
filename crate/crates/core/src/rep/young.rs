//! Young's orthogonal form for irreps of `S_n`.
//!
//! Basis: standard Young tableaux of the shape, in last-letter order (the
//! tableau whose largest differing letter sits in a lower row comes first).
//! The adjacent transposition `s_i = (i, i+1)` acts on a tableau `T` by
//! `+1` if `i, i+1` share a row, `-1` if they share a column, and otherwise
//! by `s_i T = (1/r) T + √(1 − 1/r²) T'` where `r = c(i+1) − c(i)` is the
//! axial distance (content `c = col − row`) and `T'` swaps `i` and `i+1`.

use std::collections::HashMap;

use nalgebra::DMatrix;

use super::partition::Partition;
use crate::group::Permutation;

/// A standard Young tableau stored as the (row, column) cell of each letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    cells: Vec<(usize, usize)>,
}

impl Tableau {
    pub fn row_of(&self, letter: usize) -> usize {
        self.cells[letter].0
    }

    pub fn col_of(&self, letter: usize) -> usize {
        self.cells[letter].1
    }

    fn content(&self, letter: usize) -> i64 {
        self.cells[letter].1 as i64 - self.cells[letter].0 as i64
    }

    /// Rows as lists of 1-based letters.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let nrows = self.cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let mut rows = vec![Vec::new(); nrows];
        for (letter, &(r, _)) in self.cells.iter().enumerate() {
            rows[r].push(letter + 1);
        }
        rows
    }

    fn swapped(&self, i: usize) -> Tableau {
        let mut cells = self.cells.clone();
        cells.swap(i, i + 1);
        Tableau { cells }
    }
}

/// All standard tableaux of `shape`, in last-letter order.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    fn rec(shape: &[usize], lens: &mut Vec<usize>, cells: &mut Vec<(usize, usize)>, out: &mut Vec<Tableau>) {
        if cells.len() == shape.iter().sum::<usize>() {
            out.push(Tableau { cells: cells.clone() });
            return;
        }
        for r in 0..shape.len() {
            if lens[r] < shape[r] && (r == 0 || lens[r - 1] > lens[r]) {
                cells.push((r, lens[r]));
                lens[r] += 1;
                rec(shape, lens, cells, out);
                lens[r] -= 1;
                cells.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(shape.parts(), &mut vec![0; shape.len()], &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        let n = a.cells.len();
        (0..n).rev().map(|l| b.row_of(l).cmp(&a.row_of(l))).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

#[derive(Debug, Clone, Copy)]
struct Action {
    diag: f64,
    partner: Option<(usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct YoungOrthogonal {
    shape: Partition,
    tableaux: Vec<Tableau>,
    /// `actions[i][t]`: how `s_i` acts on tableau `t`.
    actions: Vec<Vec<Action>>,
}

impl YoungOrthogonal {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = standard_tableaux(shape);
        let position: HashMap<&Tableau, usize> = tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let n = shape.size();
        let actions = (0..n.saturating_sub(1))
            .map(|i| {
                tableaux
                    .iter()
                    .map(|t| {
                        if t.row_of(i) == t.row_of(i + 1) {
                            Action { diag: 1.0, partner: None }
                        } else if t.col_of(i) == t.col_of(i + 1) {
                            Action { diag: -1.0, partner: None }
                        } else {
                            let r = (t.content(i + 1) - t.content(i)) as f64;
                            let partner = position[&t.swapped(i)];
                            Action { diag: 1.0 / r, partner: Some((partner, (1.0 - 1.0 / (r * r)).sqrt())) }
                        }
                    })
                    .collect()
            })
            .collect();
        YoungOrthogonal { shape: shape.clone(), tableaux, actions }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    /// `m ← r(s_i) · m`, as row operations.
    fn left_mul_adjacent(&self, i: usize, m: &mut DMatrix<f64>) {
        for (t, a) in self.actions[i].iter().enumerate() {
            match a.partner {
                None => m.row_mut(t).scale_mut(a.diag),
                Some((p, off)) if p > t => {
                    let dp = self.actions[i][p].diag;
                    let rt = m.row(t).clone_owned();
                    let rp = m.row(p).clone_owned();
                    m.set_row(t, &(&rt * a.diag + &rp * off));
                    m.set_row(p, &(&rp * dp + &rt * off));
                }
                Some(_) => {}
            }
        }
    }

    /// Real orthogonal matrix of `perm`.
    ///
    /// Bubble-sorting the one-line array records swaps `a_1, …, a_k` with
    /// `π ∘ s_{a_1} ∘ … ∘ s_{a_k} = e`, so `r(π) = r(s_{a_k}) ⋯ r(s_{a_1})`.
    pub fn matrix(&self, perm: &Permutation) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.dim(), self.dim());
        let mut p = perm.images().to_vec();
        let n = p.len();
        for end in (1..n).rev() {
            for j in 0..end {
                if p[j] > p[j + 1] {
                    p.swap(j, j + 1);
                    self.left_mul_adjacent(j, &mut m);
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn last_letter_order_for_21() {
        let t = standard_tableaux(&Partition::new(vec![2, 1]).unwrap());
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].rows(), vec![vec![1, 2], vec![3]]);
        assert_eq!(t[1].rows(), vec![vec![1, 3], vec![2]]);
    }

    #[test]
    fn transposition_12_is_diagonal() {
        let yor = YoungOrthogonal::new(&Partition::new(vec![2, 1]).unwrap());
        let g = GroupSpec::symmetric(3).parse_element("(1 2)").unwrap();
        let m = yor.matrix(g.as_permutation().unwrap());
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]));
    }

    #[test]
    fn tableau_counts_match_dimension() {
        for n in 1..=7 {
            for p in Partition::all(n) {
                assert_eq!(standard_tableaux(&p).len(), super::super::partition::irrep_dimension_usize(&p).unwrap());
            }
        }
    }
}
