//! Dense exact matrices and Gaussian elimination.

use std::fmt;

use crate::field::{Field, Scalar};

/// Row-major dense matrix over an exact [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Builds a matrix from small integers; handy in tests.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Self::from_rows(field, rows, cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out.data[i * out.cols + j] + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let x = m.get(row, j) * &inv;
                m.set(row, j, x);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let x = m.get(r, j) - &(&factor * m.get(row, j));
                    m.set(r, j, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : self * x = 0}`, as columns.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (kk, &f) in free.iter().enumerate() {
            k.set(f, kk, self.field.one());
            for (prow, &pc) in pivots.iter().enumerate() {
                k.set(pc, kk, -r.get(prow, f));
            }
        }
        k
    }

    /// Solves `self * x = rhs`; `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hcat(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(prow, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Indices of standard basis vectors that, added to the column span of
    /// `self`, complete it to the whole ambient space.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let n = self.rows;
        let aug = self.hcat(&Matrix::identity(self.field, n));
        let (_, pivots) = aug.rref();
        pivots
            .into_iter()
            .filter(|&p| p >= self.cols)
            .map(|p| p - self.cols)
            .collect()
    }

    /// A basis of the column span, as columns of a new matrix.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::from_ints(Q, &[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(Matrix::zeros(Q, 3, 4).rank(), 0);
        // Over F_2 the second row is a multiple of the first.
        let f2 = Field::prime(2).unwrap();
        assert_eq!(Matrix::from_ints(f2, &[&[1, 1], &[3, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = Matrix::from_ints(Q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        assert_eq!(a.rank() + k.cols(), a.cols());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::from_ints(Q, &[&[1, 1], &[0, 1]]);
        let b = Matrix::from_ints(Q, &[&[3], &[1]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let singular = Matrix::from_ints(Q, &[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&Matrix::from_ints(Q, &[&[1], &[2]])).is_none());
    }

    #[test]
    fn complement_completes_a_basis() {
        let sub = Matrix::from_ints(Q, &[&[1], &[1], &[0]]);
        let extra = sub.complement_coordinates();
        assert_eq!(extra.len(), 2);
        let mut full = sub.clone();
        for e in extra {
            let mut col = Matrix::zeros(Q, 3, 1);
            col.set(e, 0, Q.one());
            full = full.hcat(&col);
        }
        assert_eq!(full.rank(), 3);
    }
}
