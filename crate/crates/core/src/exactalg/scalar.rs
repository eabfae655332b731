//! Ordered-field scalars: exact rationals, a real quadratic extension
//! `Q(sqrt(m))`, or floats with an explicit zero tolerance.
//!
//! Sign determination is exact in the two exact modes; in float mode any
//! value with `|x| <= tol` counts as zero. The quadratic sign test never
//! leaves the field: `sign(a + b*sqrt(m))` is decided from the signs of `a`
//! and `b` and a comparison of `a^2` against `m*b^2`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which ordered field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Rational,
    /// `Q(sqrt(m))` for a square-free integer m >= 2.
    Quadratic(u32),
    /// Machine floats; the payload is the zero tolerance.
    Float(f64),
}

fn square_free(m: u32) -> bool {
    let mut m = m;
    let mut p = 2u32;
    while p.saturating_mul(p) <= m {
        if m % (p * p) == 0 {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

impl FieldSpec {
    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    pub fn quadratic(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidField(format!("radicand {m} must be >= 2")));
        }
        if !square_free(m) {
            return Err(Error::InvalidField(format!("radicand {m} is not square-free")));
        }
        Ok(FieldSpec::Quadratic(m))
    }

    pub fn float(tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidField(format!("tolerance {tol} must be positive")));
        }
        Ok(FieldSpec::Float(tol))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldSpec::Float(_))
    }

    pub fn tolerance(&self) -> Option<f64> {
        match self {
            FieldSpec::Float(t) => Some(*t),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Quadratic(m) => Scalar::Quad {
                a: BigRational::from_integer(BigInt::from(n)),
                b: BigRational::zero(),
                m: *m,
            },
            FieldSpec::Float(tol) => Scalar::Float { v: n as f64, tol: *tol },
        }
    }

    pub fn ratio(&self, p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::new(BigInt::from(p), BigInt::from(q))),
            FieldSpec::Quadratic(m) => Scalar::Quad {
                a: BigRational::new(BigInt::from(p), BigInt::from(q)),
                b: BigRational::zero(),
                m: *m,
            },
            FieldSpec::Float(tol) => Scalar::Float { v: p as f64 / q as f64, tol: *tol },
        }
    }

    /// `sqrt(m)` as a scalar; only available in quadratic mode.
    pub fn radical(&self) -> Option<Scalar> {
        match self {
            FieldSpec::Quadratic(m) => Some(Scalar::Quad {
                a: BigRational::zero(),
                b: BigRational::one(),
                m: *m,
            }),
            _ => None,
        }
    }

    pub fn from_f64(&self, v: f64) -> Scalar {
        match self {
            FieldSpec::Float(tol) => Scalar::Float { v, tol: *tol },
            _ => panic!("from_f64 is only valid in float mode"),
        }
    }

    /// Parse one scalar token in this field's syntax.
    ///
    /// Rational: `p` or `p/q`. Quadratic additionally: `p/q+r/s*rt`,
    /// `p/q-r/s*rt` or a bare `r/s*rt`, where `rt` denotes `sqrt(m)`.
    /// Float: any decimal literal.
    pub fn parse(&self, token: &str) -> Result<Scalar> {
        let bad = |msg: &str| Error::InvalidField(format!("cannot parse `{token}`: {msg}"));
        match self {
            FieldSpec::Rational => Ok(Scalar::Rat(parse_ratio(token).ok_or_else(|| bad("expected p or p/q"))?)),
            FieldSpec::Quadratic(m) => {
                let (a, b) = parse_quadratic_token(token).ok_or_else(|| bad("expected p/q, r/s*rt or p/q+r/s*rt"))?;
                Ok(Scalar::Quad { a, b, m: *m })
            }
            FieldSpec::Float(tol) => {
                let v = f64::from_str(token).map_err(|_| bad("expected a decimal literal"))?;
                Ok(Scalar::Float { v, tol: *tol })
            }
        }
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s).ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// Split `a+b*rt` / `a-b*rt` / `b*rt` / `a` into rational parts (a, b).
fn parse_quadratic_token(s: &str) -> Option<(BigRational, BigRational)> {
    let s = s.trim();
    if let Some(prefix) = s.strip_suffix("*rt") {
        // find the split sign between the rational part and the coefficient
        let bytes = prefix.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if bytes[i] == b'+' || bytes[i] == b'-' {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let a = parse_ratio(&prefix[..i])?;
                let sign = if bytes[i] == b'-' { -1 } else { 1 };
                let b = parse_ratio(&prefix[i + 1..])?;
                Some((a, if sign < 0 { -b } else { b }))
            }
            None => {
                let b = parse_ratio(prefix)?;
                Some((BigRational::zero(), b))
            }
        }
    } else {
        let a = parse_ratio(s)?;
        Some((a, BigRational::zero()))
    }
}

/// An element of the active ordered field.
///
/// Exact variants are kept reduced (num-rational normalizes fractions), so
/// structural equality is semantic equality within a variant.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(BigRational),
    Quad { a: BigRational, b: BigRational, m: u32 },
    Float { v: f64, tol: f64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rational,
            Scalar::Quad { m, .. } => FieldSpec::Quadratic(*m),
            Scalar::Float { tol, .. } => FieldSpec::Float(*tol),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    /// Exact sign in {-1, 0, +1}; float mode treats `|v| <= tol` as zero.
    pub fn sign(&self) -> i8 {
        match self {
            Scalar::Rat(r) => sign_rat(r),
            Scalar::Quad { a, b, m } => {
                let sa = sign_rat(a);
                let sb = sign_rat(b);
                if sb == 0 {
                    sa
                } else if sa == 0 {
                    sb
                } else if sa == sb {
                    sa
                } else {
                    // compare a^2 against m*b^2; equality would force a = b = 0
                    let a2 = a * a;
                    let mb2 = b * b * BigRational::from_integer(BigInt::from(*m));
                    match a2.cmp(&mb2) {
                        Ordering::Greater => sa,
                        Ordering::Less => sb,
                        Ordering::Equal => 0,
                    }
                }
            }
            Scalar::Float { v, tol } => {
                if v.abs() <= *tol {
                    0
                } else if *v > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Ordering by sign of the difference.
    pub fn cmp_value(&self, other: &Scalar) -> Ordering {
        match (self - other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Quad { a, b, m } => {
                // 1/(a+b*rt) = (a-b*rt)/(a^2 - m b^2)
                let denom = a * a - b * b * BigRational::from_integer(BigInt::from(*m));
                assert!(!denom.is_zero(), "nonzero quadratic scalar has nonzero norm");
                Scalar::Quad { a: a / &denom, b: -(b / &denom), m: *m }
            }
            Scalar::Float { v, tol } => Scalar::Float { v: 1.0 / v, tol: *tol },
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => rat_to_f64(r),
            Scalar::Quad { a, b, m } => rat_to_f64(a) + rat_to_f64(b) * (*m as f64).sqrt(),
            Scalar::Float { v, .. } => *v,
        }
    }
}

fn sign_rat(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    // good enough for rendering and profiles; exact code never round-trips through here
    let n = r.numer();
    let d = r.denom();
    let nf = bigint_to_f64(n);
    let df = bigint_to_f64(d);
    nf / df
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

/// Promote mixed exact variants: rationals embed into the quadratic field.
fn promote(lhs: &Scalar, rhs: &Scalar) -> (Scalar, Scalar) {
    match (lhs, rhs) {
        (Scalar::Rat(a), Scalar::Quad { m, .. }) => (
            Scalar::Quad { a: a.clone(), b: BigRational::zero(), m: *m },
            rhs.clone(),
        ),
        (Scalar::Quad { m, .. }, Scalar::Rat(b)) => (
            lhs.clone(),
            Scalar::Quad { a: b.clone(), b: BigRational::zero(), m: *m },
        ),
        _ => (lhs.clone(), rhs.clone()),
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, |$a1:ident, $b1:ident| $rat:expr, |$a2:ident, $b2:ident, $c2:ident, $d2:ident, $m2:ident| $quad:expr, |$x:ident, $y:ident| $flt:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let (l, r) = promote(self, rhs);
                match (l, r) {
                    (Scalar::Rat($a1), Scalar::Rat($b1)) => Scalar::Rat($rat),
                    (Scalar::Quad { a: $a2, b: $b2, m }, Scalar::Quad { a: $c2, b: $d2, m: m2 }) => {
                        assert_eq!(m, m2, "mixed quadratic fields");
                        let $m2 = m;
                        $quad
                    }
                    (Scalar::Float { v: $x, tol }, Scalar::Float { v: $y, tol: t2 }) => {
                        Scalar::Float { v: $flt, tol: tol.max(t2) }
                    }
                    _ => panic!("mixed exact/float scalars"),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a, b| a + b,
    |a, b, c, d, m| Scalar::Quad { a: a + c, b: b + d, m },
    |x, y| x + y);
scalar_binop!(Sub, sub, |a, b| a - b,
    |a, b, c, d, m| Scalar::Quad { a: a - c, b: b - d, m },
    |x, y| x - y);
scalar_binop!(Mul, mul, |a, b| a * b,
    |a, b, c, d, m| {
        let mm = BigRational::from_integer(BigInt::from(m));
        Scalar::Quad { a: &a * &c + &b * &d * mm, b: &a * &d + &b * &c, m }
    },
    |x, y| x * y);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.recip().expect("division by zero scalar");
        self * &inv
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad { a, b, m } => Scalar::Quad { a: -a, b: -b, m: *m },
            Scalar::Float { v, tol } => Scalar::Float { v: -v, tol: *tol },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        (self - other).sign() == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write_rat(f, r),
            Scalar::Quad { a, b, m: _ } => {
                if b.is_zero() {
                    write_rat(f, a)
                } else {
                    write_rat(f, a)?;
                    if b.is_negative() {
                        write!(f, "-")?;
                        write_rat(f, &-b)?;
                    } else {
                        write!(f, "+")?;
                        write_rat(f, b)?;
                    }
                    write!(f, "*rt")
                }
            }
            Scalar::Float { v, .. } => write!(f, "{v}"),
        }
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q5() -> FieldSpec {
        FieldSpec::quadratic(5).unwrap()
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::quadratic(4).is_err());
        assert!(FieldSpec::quadratic(12).is_err());
        assert!(FieldSpec::quadratic(1).is_err());
        assert!(FieldSpec::quadratic(2).is_ok());
        assert!(FieldSpec::quadratic(15).is_ok());
        assert!(FieldSpec::float(0.0).is_err());
        assert!(FieldSpec::float(-1.0).is_err());
        assert!(FieldSpec::float(1e-9).is_ok());
    }

    #[test]
    fn quadratic_sign_cases() {
        let f = q5();
        // tau = (1 + sqrt5)/2 > 0, and 1 - tau < 0
        let tau = &(f.one() + f.radical().unwrap()) / &f.integer(2);
        assert_eq!(tau.sign(), 1);
        assert_eq!((f.one() - tau.clone()).sign(), -1);
        // 9/4 - sqrt5 > 0 since (9/4)^2 = 81/16 > 5
        let x = f.ratio(9, 4) - f.radical().unwrap();
        assert_eq!(x.sign(), 1);
        // 2 - sqrt5 < 0
        assert_eq!((f.integer(2) - f.radical().unwrap()).sign(), -1);
        // tau^2 = tau + 1
        assert_eq!(&tau * &tau, tau.clone() + f.one());
    }

    #[test]
    fn float_tolerance_zero() {
        let f = FieldSpec::float(1e-9).unwrap();
        assert_eq!(f.from_f64(5e-10).sign(), 0);
        assert_eq!(f.from_f64(-5e-10).sign(), 0);
        assert_eq!(f.from_f64(2e-9).sign(), 1);
    }

    #[test]
    fn parse_and_print_roundtrip_examples() {
        let f = q5();
        for tok in ["3", "-7/2", "1/2+1/2*rt", "0-1*rt", "5/2-1/2*rt", "2*rt", "-3/4*rt"] {
            let s = f.parse(tok).unwrap();
            let printed = s.to_string();
            let again = f.parse(&printed).unwrap();
            assert_eq!(s, again, "token {tok} printed as {printed}");
        }
        let r = FieldSpec::rational();
        assert!(r.parse("1/2+1/2*rt").is_err());
        assert!(r.parse("0.5").is_err());
        assert_eq!(r.parse("6/4").unwrap().to_string(), "3/2");
    }

    fn arb_rat() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| FieldSpec::rational().ratio(p, q))
    }

    fn arb_quad() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..10, -20i64..20, 1i64..10).prop_map(|(p, q, r, s)| {
            let f = q5();
            f.ratio(p, q) + f.ratio(r, s) * f.radical().unwrap()
        })
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), FieldSpec::rational().one());
            }
        }

        #[test]
        fn quadratic_field_axioms(a in arb_quad(), b in arb_quad(), c in arb_quad()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), q5().one());
            }
        }

        #[test]
        fn quadratic_print_parse_roundtrip(a in arb_quad()) {
            let f = q5();
            prop_assert_eq!(f.parse(&a.to_string()).unwrap(), a);
        }
    }
}
