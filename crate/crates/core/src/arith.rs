//! Exact arithmetic substrate: arbitrary-precision rationals, integer square
//! roots, rational square-root brackets and quadratic-surd normalization.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ArithError;

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// Convenience constructor for small literals. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
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

    pub fn half() -> Self {
        Self::frac(1, 2)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        // Split to avoid overflow when both parts are huge.
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => self.0.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    /// Accepts `a`, `a/b` and plain decimals such as `2.7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::Parse(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Rational::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
                "" => BigInt::zero(),
                digits => digits.parse().map_err(|_| bad())?,
            };
            let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let magnitude = int_part * &scale + frac_part;
            let num = if negative { -magnitude } else { magnitude };
            return Rational::new(num, scale);
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{}/{}", self.numer(), self.denom()))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

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

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

/// Exact comparison of two rationals as real numbers.
pub fn rational_cmp(a: &Rational, b: &Rational) -> Ordering {
    // Cross-multiplication; denominators are positive.
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

/// Largest `m` with `m * m <= x`.
pub fn isqrt_floor(x: &BigInt) -> Result<BigInt, ArithError> {
    if x.is_negative() {
        return Err(ArithError::NegativeInput(x.to_string()));
    }
    Ok(x.sqrt())
}

/// `floor(sqrt(x))` for a nonnegative rational.
pub fn floor_sqrt(x: &Rational) -> Result<BigInt, ArithError> {
    if x.is_negative() {
        return Err(ArithError::NegativeInput(x.to_string()));
    }
    // m <= sqrt(x)  <=>  m^2 <= x  <=>  m^2 <= floor(x)
    isqrt_floor(&x.floor())
}

/// `ceil(sqrt(x))` for a nonnegative rational: the least `m >= 0` with `m^2 >= x`.
pub fn ceil_sqrt(x: &Rational) -> Result<BigInt, ArithError> {
    let m = floor_sqrt(x)?;
    if Rational::from_integer(&m * &m) == *x {
        Ok(m)
    } else {
        Ok(m + 1)
    }
}

/// `ceil(sqrt(x) + offset)` decided exactly, for `x >= 0`.
pub fn ceil_sqrt_plus(x: &Rational, offset: &Rational) -> Result<BigInt, ArithError> {
    if x.is_negative() {
        return Err(ArithError::NegativeInput(x.to_string()));
    }
    // Smallest integer t with t - offset >= sqrt(x), i.e. t >= offset and (t - offset)^2 >= x.
    let mut t = floor_sqrt(x)? + offset.floor();
    loop {
        let shifted = Rational::from_integer(t.clone()) - offset;
        if !shifted.is_negative() && rational_cmp(&shifted.square(), x) != Ordering::Less {
            // step back while the previous integer still qualifies
            let prev = &shifted - &Rational::one();
            if !prev.is_negative() && rational_cmp(&prev.square(), x) != Ordering::Less {
                t -= 1;
                continue;
            }
            return Ok(t);
        }
        t += 1;
    }
}

const SQRT_BOUND_SCALE: u64 = 10_000_000;

/// Rational bracket `lo <= sqrt(x) <= hi` with `hi - lo <= 1e-6`; exact when
/// `x` is the square of a rational.
pub fn rational_sqrt_bounds(x: &Rational) -> Result<(Rational, Rational), ArithError> {
    if x.is_negative() {
        return Err(ArithError::NegativeInput(x.to_string()));
    }
    if let Some(root) = exact_rational_sqrt(x) {
        return Ok((root.clone(), root));
    }
    let scale = BigInt::from(SQRT_BOUND_SCALE);
    let scaled = (x * &Rational::from_integer(&scale * &scale)).floor();
    let s = isqrt_floor(&scaled)?;
    let lo = Rational::new(s.clone(), scale.clone())?;
    let hi = Rational::new(s + 1, scale)?;
    Ok((lo, hi))
}

/// `sqrt(x)` when it is itself rational.
pub fn exact_rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational(BigRational::new(n, d)))
    } else {
        None
    }
}

/// A radius `s * sqrt(d) / q` with `d` squarefree and `gcd(s, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurdRadius {
    pub s: BigUint,
    pub d: BigUint,
    pub q: BigUint,
}

impl SurdRadius {
    /// The squared radius `s^2 d / q^2`.
    pub fn square(&self) -> Rational {
        let num = BigInt::from_biguint(Sign::Plus, &self.s * &self.s * &self.d);
        let den = BigInt::from_biguint(Sign::Plus, &self.q * &self.q);
        Rational::new(num, den).expect("q is positive")
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        let s = self.s.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        s * d.sqrt() / q
    }
}

impl fmt::Display for SurdRadius {
    /// `s√d/q`, dropping `s` and `/q` when they equal 1: `√10/2`, `3`, `5√2/6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.s.is_one() || self.d.is_one() {
            out.push_str(&self.s.to_string());
        }
        if !self.d.is_one() {
            out.push('√');
            out.push_str(&self.d.to_string());
        }
        if !self.q.is_one() {
            out.push('/');
            out.push_str(&self.q.to_string());
        }
        f.write_str(&out)
    }
}

/// Writes `n = s^2 * d` with `d` squarefree, by trial division.
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    if let Some(small) = n.to_u64() {
        let (s, d) = squarefree_decompose_u64(small);
        return (BigUint::from(s), BigUint::from(d));
    }
    let mut rest = n.clone();
    let mut s = BigUint::one();
    let mut d = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= &p;
            }
        }
        p += 1u32;
    }
    if !rest.is_one() {
        d *= rest;
    }
    (s, d)
}

fn squarefree_decompose_u64(mut n: u64) -> (u64, u64) {
    let (mut s, mut d) = (1u64, 1u64);
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        d *= n;
    }
    (s, d)
}

/// Normalizes `sqrt(r2)` to `s * sqrt(d) / q`.
pub fn surd_normalize(r2: &Rational) -> Result<SurdRadius, ArithError> {
    if !r2.is_positive() {
        return Err(ArithError::NonPositive(r2.to_string()));
    }
    let a = r2.numer().magnitude();
    let b = r2.denom().magnitude();
    // sqrt(a/b) = sa sqrt(da) / (sb sqrt(db)) = sa sqrt(da db) / (sb db); da, db coprime.
    let (sa, da) = squarefree_decompose(a);
    let (sb, db) = squarefree_decompose(b);
    let d = &da * &db;
    let q = sb * &db;
    let g = sa.gcd(&q);
    Ok(SurdRadius {
        s: sa / &g,
        d,
        q: q / g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(rational_cmp(&r(5, 2), &r(5, 2)), Ordering::Equal);
        assert_eq!(rational_cmp(&r(13, 1), &r(25, 2)), Ordering::Greater);
        assert_eq!(rational_cmp(&r(13, 4), &r(5, 2)), Ordering::Greater);
        // 170*36 = 6120 < 481*16 = 7696
        assert_eq!(rational_cmp(&r(170, 16), &r(481, 36)), Ordering::Less);
    }

    #[test]
    fn canonical_form() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt_floor(&BigInt::from(0)).unwrap(), BigInt::from(0));
        assert_eq!(isqrt_floor(&BigInt::from(3)).unwrap(), BigInt::from(1));
        assert_eq!(
            isqrt_floor(&BigInt::from(100_000_001u64)).unwrap(),
            BigInt::from(10_000)
        );
        assert!(isqrt_floor(&BigInt::from(-1)).is_err());
    }

    #[test]
    fn sqrt_bounds_examples() {
        let (lo, hi) = rational_sqrt_bounds(&r(4, 1)).unwrap();
        assert_eq!(lo, r(2, 1));
        assert_eq!(hi, r(2, 1));

        let x = r(5, 2);
        let (lo, hi) = rational_sqrt_bounds(&x).unwrap();
        assert!(lo.square() <= x && x <= hi.square());

        let two = r(2, 1);
        let (lo, hi) = rational_sqrt_bounds(&two).unwrap();
        assert!(lo.square() <= two && two <= hi.square());
        assert!(&hi - &lo <= r(1, 1_000_000));
        assert!((lo.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-6);
        assert!(rational_sqrt_bounds(&r(-1, 3)).is_err());
    }

    #[test]
    fn floor_and_ceil_sqrt() {
        assert_eq!(floor_sqrt(&r(5, 2)).unwrap(), BigInt::from(1));
        assert_eq!(ceil_sqrt(&r(5, 2)).unwrap(), BigInt::from(2));
        assert_eq!(ceil_sqrt(&r(9, 1)).unwrap(), BigInt::from(3));
        assert_eq!(floor_sqrt(&r(9, 1)).unwrap(), BigInt::from(3));
        assert_eq!(ceil_sqrt(&r(0, 1)).unwrap(), BigInt::from(0));
    }

    #[test]
    fn ceil_sqrt_plus_half() {
        // sqrt(9/4) + 1/2 = 2 exactly
        assert_eq!(ceil_sqrt_plus(&r(9, 4), &r(1, 2)).unwrap(), BigInt::from(2));
        // sqrt(2) + 1/2 ≈ 1.914
        assert_eq!(ceil_sqrt_plus(&r(2, 1), &r(1, 2)).unwrap(), BigInt::from(2));
        // sqrt(0) + 1/2
        assert_eq!(ceil_sqrt_plus(&r(0, 1), &r(1, 2)).unwrap(), BigInt::from(1));
        // sqrt(25/4) + 1/2 = 3
        assert_eq!(
            ceil_sqrt_plus(&r(25, 4), &r(1, 2)).unwrap(),
            BigInt::from(3)
        );
        // sqrt(26/4) + 1/2 slightly above 3
        assert_eq!(
            ceil_sqrt_plus(&r(26, 4), &r(1, 2)).unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn surd_examples() {
        let s = surd_normalize(&r(5, 2)).unwrap();
        assert_eq!(
            (s.s.clone(), s.d.clone(), s.q.clone()),
            (1u32.into(), 10u32.into(), 2u32.into())
        );
        assert_eq!(s.to_string(), "√10/2");

        let s = surd_normalize(&r(481, 36)).unwrap();
        assert_eq!(s.to_string(), "√481/6");

        let s = surd_normalize(&r(25, 4)).unwrap();
        assert!(s.is_rational());
        assert_eq!(s.to_string(), "5/2");

        let s = surd_normalize(&r(25 * 34, 64)).unwrap();
        assert_eq!(s.to_string(), "5√34/8");

        assert_eq!(surd_normalize(&r(9, 1)).unwrap().to_string(), "3");
        assert!(surd_normalize(&r(0, 1)).is_err());
        assert!(surd_normalize(&r(-1, 2)).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("27/10".parse::<Rational>().unwrap(), r(27, 10));
        assert_eq!("2.7".parse::<Rational>().unwrap(), r(27, 10));
        assert_eq!("-0.5".parse::<Rational>().unwrap(), r(-1, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), r(7, 1));
        assert!("abc".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
    }
}
