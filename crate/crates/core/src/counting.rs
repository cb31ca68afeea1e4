//! Exact lattice-point counts for circles with rational center and rational
//! squared radius, and the closed-form counters for origin-centered circles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_sqrt, floor_sqrt, rational_sqrt_bounds, Rational};
use crate::error::ArithError;

/// A circle with rational center and positive rational squared radius.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circle {
    cx: Rational,
    cy: Rational,
    r2: Rational,
}

impl Circle {
    pub fn new(cx: Rational, cy: Rational, r2: Rational) -> Result<Self, ArithError> {
        if !r2.is_positive() {
            return Err(ArithError::NonPositive(r2.to_string()));
        }
        Ok(Circle { cx, cy, r2 })
    }

    pub fn cx(&self) -> &Rational {
        &self.cx
    }

    pub fn cy(&self) -> &Rational {
        &self.cy
    }

    pub fn r2(&self) -> &Rational {
        &self.r2
    }

    /// Squared distance from the center to `(x, y)`.
    pub fn dist2(&self, x: &BigInt, y: &BigInt) -> Rational {
        let dx = Rational::from_integer(x.clone()) - &self.cx;
        let dy = Rational::from_integer(y.clone()) - &self.cy;
        dx.square() + dy.square()
    }

    /// Position of a point relative to the circle, decided exactly.
    pub fn locate(&self, x: &BigInt, y: &BigInt) -> Ordering {
        self.dist2(x, y).cmp(&self.r2)
    }
}

impl fmt::Debug for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circle(({}, {}), r2={})", self.cx, self.cy, self.r2)
    }
}

/// Lattice points strictly inside and exactly on a circle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointCount {
    pub interior: u64,
    pub boundary: u64,
}

/// Counts lattice points strictly inside and on `c`, column by column.
pub fn count_points(c: &Circle) -> PointCount {
    let (_, hi) = rational_sqrt_bounds(c.r2()).expect("r2 > 0");
    let x_lo = (c.cx() - &hi).floor() - 1u32;
    let x_hi = (c.cx() + &hi).ceil() + 1u32;

    // Scale the y axis by the center's denominator so column tests are integral.
    let d = c.cy().denom().clone();
    let y_scaled = c.cy().numer().clone();
    let d_rat = Rational::from_integer(d.clone());
    let d2 = d_rat.square();

    let mut count = PointCount::default();
    let mut p = x_lo;
    while p <= x_hi {
        let dx = Rational::from_integer(p.clone()) - c.cx();
        let rem = c.r2() - &dx.square();
        p += 1;
        if rem.is_negative() {
            continue;
        }
        // (q d - Y)^2 < rem d^2 =: u
        let u = &rem * &d2;
        if u.is_positive() {
            let below = ceil_sqrt(&u).expect("u >= 0") - 1;
            let q_lo = Integer::div_ceil(&(&y_scaled - &below), &d);
            let q_hi = Integer::div_floor(&(&y_scaled + &below), &d);
            if q_hi >= q_lo {
                count.interior += (q_hi - q_lo + 1u32).to_u64().expect("count fits in u64");
            }
        }
        if u.is_integer() {
            let t = floor_sqrt(&u).expect("u >= 0");
            if Rational::from_integer(&t * &t) == u {
                if t.is_zero() {
                    if y_scaled.is_multiple_of(&d) {
                        count.boundary += 1;
                    }
                } else {
                    for cand in [&y_scaled + &t, &y_scaled - &t] {
                        if cand.is_multiple_of(&d) {
                            count.boundary += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

/// Fast counter for a circle given in integer form: center `(x/d, y/d)` and
/// squared radius `r/d^2`, with `d > 0` and `r >= 0`.
pub(crate) fn count_points_int(x: i64, y: i64, d: i64, r: i64) -> PointCount {
    debug_assert!(d > 0 && r >= 0);
    let (x, y, d, r) = (x as i128, y as i128, d as i128, r as i128);
    let s = (r as u128).sqrt() as i128;
    let p_lo = Integer::div_ceil(&(x - s), &d);
    let p_hi = Integer::div_floor(&(x + s), &d);
    let mut count = PointCount::default();
    for p in p_lo..=p_hi {
        let dx = p * d - x;
        let u = r - dx * dx;
        if u < 0 {
            continue;
        }
        if u > 0 {
            let below = ((u - 1) as u128).sqrt() as i128;
            let q_lo = Integer::div_ceil(&(y - below), &d);
            let q_hi = Integer::div_floor(&(y + below), &d);
            if q_hi >= q_lo {
                count.interior += (q_hi - q_lo + 1) as u64;
            }
        }
        let t = (u as u128).sqrt() as i128;
        if t * t == u {
            if t == 0 {
                if y % d == 0 {
                    count.boundary += 1;
                }
            } else {
                count.boundary += ((y + t) % d == 0) as u64 + ((y - t) % d == 0) as u64;
            }
        }
    }
    count
}

/// Lattice points inside or on the origin circle of squared radius `r2`:
/// `1 + 4 floor(r) + 4 sum_{j=1..floor(r)} floor(sqrt(r^2 - j^2))`.
pub fn closed_count_n(r2: &Rational) -> Result<u64, ArithError> {
    if !r2.is_positive() {
        return Err(ArithError::NonPositive(r2.to_string()));
    }
    let fr = floor_sqrt(r2)?.to_u64().expect("radius fits in u64");
    let mut sum: u64 = 0;
    for j in 1..=fr {
        let rest = r2 - &Rational::from_integer(j * j);
        sum += floor_sqrt(&rest)?.to_u64().expect("fits");
    }
    Ok(1 + 4 * fr + 4 * sum)
}

/// Lattice points strictly inside the origin circle of squared radius `r2`:
/// `4 ceil(r) - 3 + 4 sum_{j=1..ceil(r)-1} (ceil(sqrt(r^2 - j^2)) - 1)`.
pub fn closed_count_nu(r2: &Rational) -> Result<u64, ArithError> {
    if !r2.is_positive() {
        return Err(ArithError::NonPositive(r2.to_string()));
    }
    let cr = ceil_sqrt(r2)?.to_u64().expect("radius fits in u64");
    let mut sum: u64 = 0;
    for j in 1..cr {
        let rest = r2 - &Rational::from_integer(j * j);
        sum += ceil_sqrt(&rest)?.to_u64().expect("fits") - 1;
    }
    Ok(4 * cr - 3 + 4 * sum)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussError {
    /// `N(r) - pi r^2`
    pub error: f64,
    pub within_bound: bool,
}

/// Floating-point check of `|N(r) - pi r^2| <= 2 sqrt(2) pi r` (with `1e-9` slack).
pub fn gauss_error(r: &Rational) -> Result<GaussError, ArithError> {
    if !r.is_positive() {
        return Err(ArithError::NonPositive(r.to_string()));
    }
    let n = closed_count_n(&r.square())? as f64;
    let rf = r.to_f64();
    let pi = std::f64::consts::PI;
    let error = n - pi * rf * rf;
    let bound = 2.0 * std::f64::consts::SQRT_2 * pi * rf;
    Ok(GaussError {
        error,
        within_bound: error.abs() <= bound + 1e-9,
    })
}
