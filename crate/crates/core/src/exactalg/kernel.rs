//! Exact null-space computation with a deterministic output convention.
//!
//! The canonical basis of a kernel: one vector per free column, free columns
//! in increasing index order, each vector carrying entry 1 at its own free
//! column and 0 at the others. This matches what reduced row echelon form of
//! the constraint matrix produces, and is computed here by right-to-left
//! reduction of any spanning set of the kernel.

use crate::exactalg::matrix::Matrix;
use crate::exactalg::scalar::{FieldSpec, Scalar};

/// Incrementally intersects the kernel of a growing list of linear
/// constraints on `F^n`, starting from the full space.
///
/// Rows may be fed sparsely; the tracked basis shrinks by one whenever an
/// independent constraint arrives. Float mode uses partial pivoting against
/// the field tolerance and records whether any pivot decision was close to
/// the threshold.
pub struct KernelTracker {
    field: FieldSpec,
    n: usize,
    basis: Vec<Vec<Scalar>>,
    near_threshold: bool,
}

impl KernelTracker {
    pub fn new(field: FieldSpec, n: usize) -> Self {
        let mut basis = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = vec![field.zero(); n];
            v[i] = field.one();
            basis.push(v);
        }
        KernelTracker { field, n, basis, near_threshold: false }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn near_threshold(&self) -> bool {
        self.near_threshold
    }

    pub fn constrain_sparse(&mut self, entries: &[(usize, Scalar)]) {
        if self.basis.is_empty() {
            return;
        }
        let dots: Vec<Scalar> = self
            .basis
            .iter()
            .map(|b| {
                let mut acc = self.field.zero();
                for (j, v) in entries {
                    if !v.is_zero() {
                        acc = &acc + &(v * &b[*j]);
                    }
                }
                acc
            })
            .collect();
        let pivot = match self.field {
            FieldSpec::Float(tol) => {
                let mut best: Option<(usize, f64)> = None;
                for (i, d) in dots.iter().enumerate() {
                    let a = d.to_f64().abs();
                    if a >= tol * 0.5 && a <= tol * 2.0 {
                        self.near_threshold = true;
                    }
                    if a > tol && best.map_or(true, |(_, x)| a > x) {
                        best = Some((i, a));
                    }
                }
                best.map(|(i, _)| i)
            }
            _ => dots.iter().position(|d| !d.is_zero()),
        };
        let Some(p) = pivot else {
            return;
        };
        let dp = dots[p].clone();
        let pivot_vec = self.basis.remove(p);
        let mut dots = dots;
        dots.remove(p);
        for (b, d) in self.basis.iter_mut().zip(dots.iter()) {
            if d.is_zero() {
                continue;
            }
            let factor = d / &dp;
            for j in 0..self.n {
                b[j] = &b[j] - &(&factor * &pivot_vec[j]);
            }
        }
        if let FieldSpec::Float(_) = self.field {
            for b in self.basis.iter_mut() {
                normalize_float_vec(b);
            }
        }
    }

    pub fn constrain_dense(&mut self, row: &[Scalar]) {
        let entries: Vec<(usize, Scalar)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        self.constrain_sparse(&entries);
    }

    /// Canonical kernel basis per the convention above.
    pub fn into_canonical_basis(self) -> Vec<Vec<Scalar>> {
        canonicalize(self.field, self.n, self.basis)
    }
}

fn normalize_float_vec(v: &mut [Scalar]) {
    let max = v.iter().map(|x| x.to_f64().abs()).fold(0.0f64, f64::max);
    if max > 0.0 {
        for x in v.iter_mut() {
            if let Scalar::Float { v: val, tol } = x {
                *x = Scalar::Float { v: *val / max, tol: *tol };
            }
        }
    }
}

/// Right-to-left full reduction: pivots are the rightmost nonzero entries,
/// which are exactly the free columns of the original constraint system.
fn canonicalize(field: FieldSpec, n: usize, mut rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let k = rows.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row)
    let mut done = 0;
    for col in (0..n).rev() {
        if done == k {
            break;
        }
        let pick = match field {
            FieldSpec::Float(tol) => {
                let mut best: Option<(usize, f64)> = None;
                for r in done..k {
                    let a = rows[r][col].to_f64().abs();
                    if a > tol && best.map_or(true, |(_, x)| a > x) {
                        best = Some((r, a));
                    }
                }
                best.map(|(r, _)| r)
            }
            _ => (done..k).find(|&r| !rows[r][col].is_zero()),
        };
        let Some(r) = pick else {
            continue;
        };
        rows.swap(done, r);
        let piv = rows[done][col].clone();
        for j in 0..n {
            rows[done][j] = &rows[done][j] / &piv;
        }
        for other in 0..k {
            if other == done || rows[other][col].is_zero() {
                continue;
            }
            let factor = rows[other][col].clone();
            for j in 0..n {
                rows[other][j] = &rows[other][j] - &(&factor * &rows[done][j]);
            }
        }
        pivots.push((col, done));
        done += 1;
    }
    debug_assert_eq!(done, k, "basis rows were not independent");
    pivots.sort_by_key(|&(col, _)| col);
    pivots.into_iter().map(|(_, r)| rows[r].clone()).collect()
}

/// Canonical basis of `ker(M)`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut tracker = KernelTracker::new(m.field(), m.cols());
    for r in 0..m.rows() {
        tracker.constrain_dense(m.row(r));
    }
    tracker.into_canonical_basis()
}

pub fn rank(m: &Matrix) -> usize {
    let mut tracker = KernelTracker::new(m.field(), m.cols());
    for r in 0..m.rows() {
        tracker.constrain_dense(m.row(r));
    }
    m.cols() - tracker.dim()
}

/// Rank of a list of vectors (as rows).
pub fn rank_of_vectors(field: FieldSpec, vecs: &[Vec<Scalar>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let d = vecs[0].len();
    let mut tracker = KernelTracker::new(field, d);
    for v in vecs {
        tracker.constrain_dense(v);
    }
    d - tracker.dim()
}
