//! Dense matrices over one [`FieldSpec`].

use crate::error::{Error, Result};
use crate::exactalg::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    acc = &acc + &(self.at(r, c) * &x[c]);
                }
                acc
            })
            .collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in r..self.cols {
                if !(self.at(r, c) + self.at(c, r)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant by Gaussian elimination with exact (or tolerance-aware)
    /// pivot selection.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero());
            let Some(p) = pivot else {
                return self.field.zero();
            };
            if p != col {
                for c in 0..n {
                    let x = a.at(p, c).clone();
                    let y = a.at(col, c).clone();
                    a.set(p, c, y);
                    a.set(col, c, x);
                }
                det = -det;
            }
            let piv = a.at(col, col).clone();
            det = &det * &piv;
            for r in col + 1..n {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col) / &piv;
                for c in col..n {
                    let v = a.at(r, c) - &(&factor * a.at(col, c));
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    /// Leading principal minors `det(M[..k, ..k])` for k = 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| {
                let mut sub = Matrix::zeros(self.field, k, k);
                for r in 0..k {
                    for c in 0..k {
                        sub.set(r, c, self.at(r, c).clone());
                    }
                }
                sub.determinant()
            })
            .collect()
    }

    /// Solve the square system `self * x = rhs`; `None` if singular.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let p = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if p != col {
                for c in 0..n {
                    let x = a.at(p, c).clone();
                    let y = a.at(col, c).clone();
                    a.set(p, c, y);
                    a.set(col, c, x);
                }
                b.swap(p, col);
            }
            let piv = a.at(col, col).clone();
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col) / &piv;
                for c in col..n {
                    let v = a.at(r, c) - &(&factor * a.at(col, c));
                    a.set(r, c, v);
                }
                b[r] = &b[r] - &(&factor * &b[col]);
            }
        }
        Some((0..n).map(|i| &b[i] / a.at(i, i)).collect())
    }

    /// Submatrix with row `i` and column `j` deleted (square input).
    pub fn minor_matrix(&self, i: usize, j: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows - 1, self.cols - 1);
        let mut rr = 0;
        for r in 0..self.rows {
            if r == i {
                continue;
            }
            let mut cc = 0;
            for c in 0..self.cols {
                if c == j {
                    continue;
                }
                out.set(rr, cc, self.at(r, c).clone());
                cc += 1;
            }
            rr += 1;
        }
        out
    }

    pub fn check_symmetric(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Invalid("matrix is not square".into()));
        }
        for r in 0..self.rows {
            for c in r + 1..self.cols {
                if self.at(r, c) != self.at(c, r) {
                    return Err(Error::Invalid(format!(
                        "matrix is not symmetric at ({}, {})",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        Ok(())
    }
}
