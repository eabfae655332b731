//! Strict-feasibility testing by exact simplex.
//!
//! Given `B` with n rows over an ordered field, decide whether some `mu`
//! satisfies `B mu > 0` componentwise. This is run as the bounded LP
//!
//!   maximize eps  subject to  B mu - eps * 1 >= 0,  eps <= 1,
//!
//! which always admits the feasible start (mu, eps) = (0, 0) and has optimum
//! eps* > 0 exactly when the open cone is nonempty. Bland's rule keeps the
//! pivot sequence deterministic and terminating.

use crate::exactalg::matrix::Matrix;
use crate::exactalg::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone)]
pub struct StrictLp {
    /// Optimal eps of the feasibility program.
    pub optimum: Scalar,
    /// A point with `B mu > 0`, present iff optimum > 0.
    pub point: Option<Vec<Scalar>>,
}

/// Solve the strict-feasibility LP for `B` (n x k).
pub fn strict_feasibility_lp(b: &Matrix) -> StrictLp {
    let field = b.field();
    let n = b.rows();
    let k = b.cols();

    // columns: mu+ (k) | mu- (k) | eps | slacks (n + 1) | rhs
    let nvars = 2 * k + 1;
    let ncols = nvars + n + 1 + 1;
    let rhs_col = ncols - 1;
    let eps_col = 2 * k;

    let mut tableau: Vec<Vec<Scalar>> = Vec::with_capacity(n + 2);
    for i in 0..n {
        // -B mu + eps <= 0
        let mut row = vec![field.zero(); ncols];
        for j in 0..k {
            row[j] = -b.at(i, j);
            row[k + j] = b.at(i, j).clone();
        }
        row[eps_col] = field.one();
        row[nvars + i] = field.one();
        tableau.push(row);
    }
    {
        // eps <= 1
        let mut row = vec![field.zero(); ncols];
        row[eps_col] = field.one();
        row[nvars + n] = field.one();
        row[rhs_col] = field.one();
        tableau.push(row);
    }
    // objective: maximize eps; reduced-cost row (c_j), updated by pivots
    let mut obj = vec![field.zero(); ncols];
    obj[eps_col] = field.one();

    let mut basis: Vec<usize> = (0..=n).map(|i| nvars + i).collect();
    let rows = n + 1;

    let mut iterations = 0usize;
    let max_iterations = 50_000;
    loop {
        iterations += 1;
        assert!(iterations < max_iterations, "simplex failed to terminate");
        // Bland: entering column = lowest index with positive reduced cost
        let entering = (0..ncols - 1).find(|&j| obj[j].sign() > 0);
        let Some(e) = entering else {
            break;
        };
        // ratio test; ties by smallest basis variable index
        let mut leave: Option<(usize, Scalar)> = None;
        for r in 0..rows {
            if tableau[r][e].sign() <= 0 {
                continue;
            }
            let ratio = &tableau[r][rhs_col] / &tableau[r][e];
            let better = match &leave {
                None => true,
                Some((lr, lratio)) => match ratio.cmp_value(lratio) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => basis[r] < basis[*lr],
                    std::cmp::Ordering::Greater => false,
                },
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let (lr, _) = leave.expect("objective is bounded by construction");
        // pivot at (lr, e)
        let piv = tableau[lr][e].clone();
        for c in 0..ncols {
            tableau[lr][c] = &tableau[lr][c] / &piv;
        }
        for r in 0..rows {
            if r == lr || tableau[r][e].is_zero() {
                continue;
            }
            let factor = tableau[r][e].clone();
            for c in 0..ncols {
                tableau[r][c] = &tableau[r][c] - &(&factor * &tableau[lr][c]);
            }
        }
        if !obj[e].is_zero() {
            let factor = obj[e].clone();
            for c in 0..ncols {
                obj[c] = &obj[c] - &(&factor * &tableau[lr][c]);
            }
        }
        basis[lr] = e;
    }

    let mut values = vec![field.zero(); ncols - 1];
    for r in 0..rows {
        if basis[r] < ncols - 1 {
            values[basis[r]] = tableau[r][rhs_col].clone();
        }
    }
    let eps = values[eps_col].clone();
    let point = if eps.sign() > 0 {
        Some((0..k).map(|j| &values[j] - &values[k + j]).collect())
    } else {
        None
    };
    StrictLp { optimum: eps, point }
}

/// Some `mu` with `(B mu)_i > 0` for every row, if one exists.
pub fn strict_interior_point(b: &Matrix) -> Option<Vec<Scalar>> {
    if b.rows() == 0 {
        return Some(vec![b.field().zero(); b.cols()]);
    }
    strict_feasibility_lp(b).point
}
