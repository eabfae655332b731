//! Pfaffians of skew-symmetric matrices by Laplace-style expansion along the
//! first row. Flats at desk scale stay small, so the (n-1)!! term count is
//! never a concern.

use crate::error::{Error, Result};
use crate::exactalg::matrix::Matrix;
use crate::exactalg::scalar::Scalar;

pub fn pfaffian(s: &Matrix) -> Result<Scalar> {
    if !s.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    Ok(pf_rec(s))
}

fn pf_rec(s: &Matrix) -> Scalar {
    let n = s.rows();
    if n == 0 {
        return s.field().one();
    }
    if n % 2 == 1 {
        return s.field().zero();
    }
    if n == 2 {
        return s.at(0, 1).clone();
    }
    let mut acc = s.field().zero();
    for c in 1..n {
        if s.at(0, c).is_zero() {
            continue;
        }
        // delete rows/cols 0 and c (row c shifts to c-1 after the first cut)
        let sub = s.minor_matrix(0, c).minor_matrix(c - 1, 0);
        let term = s.at(0, c) * &pf_rec(&sub);
        // 1-based column index c+1: even columns add, odd subtract
        if c % 2 == 1 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::FieldSpec;
    use proptest::prelude::*;

    fn f() -> FieldSpec {
        FieldSpec::rational()
    }

    fn rat(n: i64) -> Scalar {
        f().integer(n)
    }

    fn skew_from_upper(n: usize, upper: &[i64]) -> Matrix {
        let mut m = Matrix::zeros(f(), n, n);
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = rat(*it.next().unwrap());
                m.set(i, j, v.clone());
                m.set(j, i, -v);
            }
        }
        m
    }

    #[test]
    fn order_two() {
        let m = skew_from_upper(2, &[7]);
        assert_eq!(pfaffian(&m).unwrap(), rat(7));
    }

    #[test]
    fn order_three_is_zero() {
        let m = skew_from_upper(3, &[1, 2, 3]);
        assert_eq!(pfaffian(&m).unwrap(), rat(0));
    }

    #[test]
    fn order_four_formula() {
        // pf = r12 r34 - r13 r24 + r14 r23
        let (r12, r13, r14, r23, r24, r34) = (2i64, 3, 5, 7, 11, 13);
        let m = skew_from_upper(4, &[r12, r13, r14, r23, r24, r34]);
        assert_eq!(
            pfaffian(&m).unwrap(),
            rat(r12 * r34 - r13 * r24 + r14 * r23)
        );
    }

    #[test]
    fn rejects_non_skew() {
        let m = Matrix::identity(f(), 2);
        assert!(matches!(pfaffian(&m), Err(Error::NotSkewSymmetric)));
    }

    proptest! {
        #[test]
        fn pfaffian_squared_is_determinant(
            n in prop::sample::select(vec![2usize, 4, 6]),
            vals in proptest::collection::vec(-9i64..9, 15),
        ) {
            let m = skew_from_upper(n, &vals[..n * (n - 1) / 2]);
            let pf = pfaffian(&m).unwrap();
            prop_assert_eq!(&pf * &pf, m.determinant());
        }
    }
}
