//! The two parametric circle families.
//!
//! `S_k` is centered at `(1/2, 1/2)` with `r^2 = k^2 + k + 1/2` and passes
//! through `(-k, 0), (-k, 1), (0, k+1), (1, k+1), (k+1, 1), (k+1, 0), (1, -k),
//! (0, -k)`; it encloses `f(k)` points. `T_k` is centered at the origin with
//! `r^2 = k^2 + 1` through `(±k, ±1), (±1, ±k)`; it encloses `g(k)` points.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_sqrt_plus, surd_normalize, Rational, SurdRadius};
use crate::counting::{closed_count_n, count_points, Circle};
use crate::enumerate::LatticePoint;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    S,
    T,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S => "S",
            Family::T => "T",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCircleRecord {
    pub k: u64,
    pub family: Family,
    pub circle: Circle,
    /// `f(k)` or `g(k)`.
    pub count: u64,
    pub r2: Rational,
    pub surd: SurdRadius,
}

fn check_k(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

pub fn s_radius2(k: u64) -> Rational {
    let k = k as i64;
    Rational::from(k * k + k) + Rational::half()
}

pub fn t_radius2(k: u64) -> Rational {
    let k = k as i64;
    Rational::from(k * k + 1)
}

pub fn s_circle(k: u64) -> Circle {
    Circle::new(Rational::half(), Rational::half(), s_radius2(k)).expect("positive radius")
}

pub fn t_circle(k: u64) -> Circle {
    Circle::new(Rational::zero(), Rational::zero(), t_radius2(k)).expect("positive radius")
}

pub fn s_defining_points(k: u64) -> [LatticePoint; 8] {
    let k = k as i64;
    [
        (-k, 0),
        (-k, 1),
        (0, k + 1),
        (1, k + 1),
        (k + 1, 1),
        (k + 1, 0),
        (1, -k),
        (0, -k),
    ]
    .map(LatticePoint::from)
}

pub fn t_defining_points(k: u64) -> [LatticePoint; 8] {
    let k = k as i64;
    [
        (k, 1),
        (k, -1),
        (-k, 1),
        (-k, -1),
        (1, k),
        (1, -k),
        (-1, k),
        (-1, -k),
    ]
    .map(LatticePoint::from)
}

/// `f(k) = 4 sum_{j=1..k} (ceil(sqrt(k^2 + k + 1/2 - (j - 1/2)^2) + 1/2) - 1)`,
/// with every ceiling decided exactly.
pub fn f_closed(k: u64) -> Result<u64> {
    check_k(k)?;
    let r2 = s_radius2(k);
    let half = Rational::half();
    let mut sum = BigInt::from(0);
    for j in 1..=k {
        let offset = Rational::from(j as i64) - &half;
        let inner = &r2 - &offset.square();
        sum += ceil_sqrt_plus(&inner, &half)? - 1u32;
    }
    Ok((sum * 4u32).to_u64().expect("count fits in u64"))
}

/// `f(k)` by direct count of the points inside `S_k`.
pub fn f_scan(k: u64) -> Result<u64> {
    check_k(k)?;
    Ok(count_points(&s_circle(k)).interior)
}

/// `g(k)`: points strictly inside `T_k`.
pub fn g_count(k: u64) -> Result<u64> {
    check_k(k)?;
    Ok(count_points(&t_circle(k)).interior)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GEqualsNReport {
    pub kmax: u64,
    /// First `k` with `g(k) != N(k)`, if any, with both values.
    pub first_failure: Option<(u64, u64, u64)>,
}

impl GEqualsNReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `g(k) = N(k)` (points with `a^2 + b^2 <= k^2`) for `k <= kmax`.
pub fn g_equals_n(kmax: u64) -> Result<GEqualsNReport> {
    check_k(kmax)?;
    for k in 1..=kmax {
        let g = g_count(k)?;
        let n = closed_count_n(&Rational::from((k * k) as i64))?;
        if g != n {
            return Ok(GEqualsNReport {
                kmax,
                first_failure: Some((k, g, n)),
            });
        }
    }
    Ok(GEqualsNReport {
        kmax,
        first_failure: None,
    })
}

/// Records for `k = 1..=max_k`. `f(k)` comes from the closed form.
pub fn records(family: Family, max_k: u64) -> Result<Vec<SpecialCircleRecord>> {
    check_k(max_k)?;
    (1..=max_k)
        .into_par_iter()
        .map(|k| {
            let (circle, count) = match family {
                Family::S => (s_circle(k), f_closed(k)?),
                Family::T => (t_circle(k), g_count(k)?),
            };
            let r2 = circle.r2().clone();
            Ok(SpecialCircleRecord {
                k,
                family,
                surd: surd_normalize(&r2)?,
                r2,
                circle,
                count,
            })
        })
        .collect()
}

/// `pi r^2` rounded to the nearest integer, for comparison with the counts.
pub fn area_estimate(r2: &Rational) -> u64 {
    (std::f64::consts::PI * r2.to_f64()).round() as u64
}
