//! Exact Gaussian elimination over the rationals.
//!
//! Deterministic by construction: columns are processed left to right and
//! the pivot row is always the first row with a nonzero entry, so the pivot
//! column set is the lexicographically earliest independent set.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::Rational;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: alloc::vec![Rational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns `(pivot_row, pivot_col)`
    /// pairs in elimination order.
    pub fn row_reduce(&mut self) -> Vec<(usize, usize)> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pr) = (next_row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, next_row);
            let inv = self.at(next_row, col).recip();
            for c in col..self.cols {
                let v = self.at(next_row, c) * &inv;
                self.set(next_row, c, v);
            }
            for r in 0..self.rows {
                if r == next_row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c) - &factor * self.at(next_row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        pivots
    }
}

pub fn rank(mut m: QMatrix) -> usize {
    m.row_reduce().len()
}

/// One exact solution of `A x = b` with every non-pivot variable set to
/// zero, or `None` when the system is inconsistent. Columns earlier in the
/// matrix are preferred as pivots, which fixes the solution deterministically.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), b.len());
    let mut aug = QMatrix::zeros(a.rows(), a.cols() + 1);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            aug.set(r, c, a.at(r, c).clone());
        }
        aug.set(r, a.cols(), b[r].clone());
    }
    let pivots = aug.row_reduce();
    if pivots.iter().any(|&(_, c)| c == a.cols()) {
        return None;
    }
    let mut x = alloc::vec![Rational::zero(); a.cols()];
    for (r, c) in pivots {
        x[c] = aug.at(r, a.cols()).clone();
    }
    Some(x)
}

/// Basis of the kernel of `A`, one vector per non-pivot column. The basis
/// vector of free column `f` has a `1` in coordinate `f`.
pub fn nullspace(mut a: QMatrix) -> Vec<Vec<Rational>> {
    let cols = a.cols();
    let pivots = a.row_reduce();
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = alloc::vec![Rational::zero(); cols];
        v[f] = Rational::from_integer(1.into());
        for &(r, c) in &pivots {
            v[c] = -a.at(r, f).clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: usize, cols: usize, entries: &[i64]) -> QMatrix {
        let mut out = QMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, int(entries[r * cols + c]));
            }
        }
        out
    }

    #[test]
    fn solves_a_determined_system() {
        // x + y = 3, x - y = 1  =>  (2, 1)
        let a = m(2, 2, &[1, 1, 1, -1]);
        let x = solve(&a, &[int(3), int(1)]).unwrap();
        assert_eq!(x, alloc::vec![int(2), int(1)]);
    }

    #[test]
    fn prefers_earlier_columns() {
        // x + y = 2 is underdetermined; the earliest column pivots.
        let a = m(1, 2, &[1, 1]);
        let x = solve(&a, &[int(2)]).unwrap();
        assert_eq!(x, alloc::vec![int(2), int(0)]);
    }

    #[test]
    fn detects_inconsistency() {
        let a = m(2, 1, &[1, 1]);
        assert!(solve(&a, &[int(1), int(2)]).is_none());
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6]);
        let basis = nullspace(a.clone());
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for r in 0..2 {
                let mut acc = int(0);
                for c in 0..3 {
                    acc += a.at(r, c) * &v[c];
                }
                assert!(acc.is_zero());
            }
        }
        assert_eq!(rank(a), 1);
    }
}
