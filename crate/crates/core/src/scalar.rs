//! Exact arithmetic in `K = Q(r)`, where `r` is a primitive sixth root of
//! unity, together with points of the nodal cubic `y^2 = x^2 + x^3`.
//!
//! Elements are stored as `c0 + c1*r` with rational coordinates. The only
//! reduction rule needed is `r^2 = r - 1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// `"num/den"`, the form used on the JSON wire.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"n"` or `"n/d"` with optional leading sign on `n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(crate::error::ParseError {
                position: 0,
                expected: vec!["rational".into()],
                found: s.chars().next(),
            })
        };
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// An element `c0 + c1*r` of `Q(r)` with `r^2 = r - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub c0: Rational,
    pub c1: Rational,
}

impl Scalar {
    pub fn new(c0: Rational, c1: Rational) -> Self {
        Scalar { c0, c1 }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    /// The primitive sixth root of unity `r`.
    pub fn root() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(c0: Rational) -> Self {
        Scalar { c0, c1: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }

    /// Field norm `c0^2 + c0*c1 + c1^2`; vanishes only at zero.
    pub fn norm(&self) -> Rational {
        &(&self.c0 * &self.c0) + &(&(&self.c0 * &self.c1) + &(&self.c1 * &self.c1))
    }

    pub fn inv(&self) -> Result<Scalar> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (c0 + c1 r)^-1 = (c0 + c1 - c1 r) / norm
        Ok(Scalar::new(
            (&self.c0 + &self.c1).checked_div(&n)?,
            (-&self.c1).checked_div(&n)?,
        ))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl From<Rational> for Scalar {
    fn from(c0: Rational) -> Self {
        Scalar::from_rational(c0)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_rational(Rational::from(n))
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.c0 + &rhs.c0, &self.c1 + &rhs.c1)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.c0 - &rhs.c0, &self.c1 - &rhs.c1)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.c1.is_zero() && rhs.c1.is_zero() {
            return Scalar::from_rational(&self.c0 * &rhs.c0);
        }
        // (a + b r)(c + d r) = ac - bd + (ad + bc + bd) r
        let bd = &self.c1 * &rhs.c1;
        let c0 = &(&self.c0 * &rhs.c0) - &bd;
        let c1 = &(&(&self.c0 * &rhs.c1) + &(&self.c1 * &rhs.c0)) + &bd;
        Scalar::new(c0, c1)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.c0, -&self.c1)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.c0, -self.c1)
    }
}

macro_rules! scalar_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_owned_binop!(Add, add);
scalar_owned_binop!(Sub, sub);
scalar_owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.c0 = &self.c0 + &rhs.c0;
        if !rhs.c1.is_zero() {
            self.c1 = &self.c1 + &rhs.c1;
        }
    }
}

/// Prints a form the expression parser reads back: `3`, `-1/2`, `2*r`,
/// `(1 - r)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            return write!(f, "{}", self.c0);
        }
        let r_part = |c1: &Rational| {
            if c1.is_one() {
                "r".to_string()
            } else {
                format!("{c1}*r")
            }
        };
        if self.c0.is_zero() {
            if self.c1.is_negative() {
                return write!(f, "-{}", r_part(&self.c1.abs()));
            }
            return write!(f, "{}", r_part(&self.c1));
        }
        let sign = if self.c1.is_negative() { '-' } else { '+' };
        write!(f, "({} {} {})", self.c0, sign, r_part(&self.c1.abs()))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarWire {
    c0: String,
    c1: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarWire { c0: self.c0.to_fraction_string(), c1: self.c1.to_fraction_string() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ScalarWire::deserialize(d)?;
        let c0 = wire.c0.parse().map_err(serde::de::Error::custom)?;
        let c1 = wire.c1.parse().map_err(serde::de::Error::custom)?;
        Ok(Scalar::new(c0, c1))
    }
}

/// A point `(q, p)` with `p^2 = q^2 + q^3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvePoint {
    q: Scalar,
    p: Scalar,
}

impl CurvePoint {
    /// Rational parametrization `(t^2 - 1, t (t^2 - 1))`.
    pub fn from_t(t: &Rational) -> CurvePoint {
        let q = &(t * t) - &Rational::one();
        let p = t * &q;
        CurvePoint { q: q.into(), p: p.into() }
    }

    pub fn validate(q: Scalar, p: Scalar) -> Result<CurvePoint> {
        let residual = curve_residual(&q, &p);
        if !residual.is_zero() {
            return Err(Error::ParameterOffCurve { residual });
        }
        Ok(CurvePoint { q, p })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn p(&self) -> &Scalar {
        &self.p
    }
}

impl<'de> Deserialize<'de> for CurvePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            q: Scalar,
            p: Scalar,
        }
        let w = Wire::deserialize(d)?;
        CurvePoint::validate(w.q, w.p).map_err(serde::de::Error::custom)
    }
}

/// `p^2 - q^2 - q^3`.
pub fn curve_residual(q: &Scalar, p: &Scalar) -> Scalar {
    let q2 = q * q;
    let q3 = &q2 * q;
    &(&(p * p) - &q2) - &q3
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c0: i64, c1: i64) -> Scalar {
        Scalar::new(c0.into(), c1.into())
    }

    #[test]
    fn root_squares_to_root_minus_one() {
        let r = Scalar::root();
        assert_eq!(&r * &r, s(-1, 1));
    }

    #[test]
    fn root_plus_inverse_is_one() {
        let r = Scalar::root();
        assert_eq!(&r + &r.inv().unwrap(), Scalar::one());
        assert_eq!(r.inv().unwrap(), s(1, -1));
        assert_eq!(r.pow(6), Scalar::one());
        assert_ne!(r.pow(3), Scalar::one());
    }

    #[test]
    fn two_plus_root_squared() {
        assert_eq!(s(2, 1).pow(2), s(3, 5));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn curve_points_from_parameter() {
        let pt = CurvePoint::from_t(&2.into());
        assert_eq!((pt.q(), pt.p()), (&Scalar::from(3), &Scalar::from(6)));
        let pt = CurvePoint::from_t(&1.into());
        assert!(pt.q().is_zero() && pt.p().is_zero());
        let pt = CurvePoint::from_t(&0.into());
        assert_eq!((pt.q(), pt.p()), (&Scalar::from(-1), &Scalar::zero()));
    }

    #[test]
    fn validate_rejects_off_curve() {
        assert!(CurvePoint::validate(3.into(), 6.into()).is_ok());
        assert!(CurvePoint::validate(0.into(), 0.into()).is_ok());
        match CurvePoint::validate(1.into(), 1.into()) {
            Err(Error::ParameterOffCurve { residual }) => assert_eq!(residual, Scalar::from(-1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_wire_format() {
        let v = Scalar::new(Rational::new(-3, 4).unwrap(), 2.into());
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"c0":"-3/4","c1":"2/1"}"#);
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        let int: Scalar = serde_json::from_str(r#"{"c0":"5","c1":"0"}"#).unwrap();
        assert_eq!(int, Scalar::from(5));
    }

    #[test]
    fn display_is_parseable_shape() {
        assert_eq!(s(3, 0).to_string(), "3");
        assert_eq!(s(0, 1).to_string(), "r");
        assert_eq!(s(0, -2).to_string(), "-2*r");
        assert_eq!(s(1, -1).to_string(), "(1 - r)");
        assert_eq!(Scalar::new(Rational::new(1, 2).unwrap(), 0.into()).to_string(), "1/2");
    }
}
