//! Lattice circles: circumcircles of lattice triples, canonicalization into the
//! key triangle, boundary points, and complete deduplicated enumeration.
//!
//! The key triangle is the closed triangle with vertices `(1/2, 0)`,
//! `(1/2, 1/2)` and `(1, 0)`. Every circle is equivalent, under an isometry
//! preserving the integer lattice, to exactly one circle centered there.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{rational_sqrt_bounds, Rational};
use crate::counting::{count_points_int, Circle, PointCount};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    fn norm2(self) -> i64 {
        self.x * self.x + self.y * self.y
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint { x, y }
    }
}

/// Membership in the closed key triangle: `x >= 1/2`, `y >= 0`, `x + y <= 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct KeyTriangle;

impl KeyTriangle {
    pub fn contains(cx: &Rational, cy: &Rational) -> bool {
        *cx >= Rational::half() && !cy.is_negative() && (cx + cy) <= Rational::one()
    }
}

/// Identity of a circle centered in the key triangle. Ordered
/// lexicographically by `cx`, then `cy`, then `r2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CircleKey {
    pub cx: Rational,
    pub cy: Rational,
    pub r2: Rational,
}

impl CircleKey {
    pub fn circle(&self) -> Circle {
        Circle::new(self.cx.clone(), self.cy.clone(), self.r2.clone())
            .expect("key radius is positive")
    }

    /// Builds a key from a circle already centered in the key triangle.
    pub fn from_canonical(c: &Circle) -> Option<Self> {
        KeyTriangle::contains(c.cx(), c.cy()).then(|| CircleKey {
            cx: c.cx().clone(),
            cy: c.cy().clone(),
            r2: c.r2().clone(),
        })
    }
}

impl fmt::Display for CircleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) r2={}", self.cx, self.cy, self.r2)
    }
}

/// Exact circumcircle of three lattice points; `None` when they are collinear.
pub fn circumcircle(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Option<Circle> {
    let (x, y, d) = circumcenter_int(a, b, c)?;
    let cx = Rational::new(x, d).ok()?;
    let cy = Rational::new(y, d).ok()?;
    let dx = Rational::from(a.x) - &cx;
    let dy = Rational::from(a.y) - &cy;
    Circle::new(cx, cy, dx.square() + dy.square()).ok()
}

/// Circumcenter `(x/d, y/d)` with `d > 0`, unreduced.
fn circumcenter_int(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Option<(i64, i64, i64)> {
    let d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d == 0 {
        return None;
    }
    let (na, nb, nc) = (a.norm2(), b.norm2(), c.norm2());
    let ux = na * (b.y - c.y) + nb * (c.y - a.y) + nc * (a.y - b.y);
    let uy = na * (c.x - b.x) + nb * (a.x - c.x) + nc * (b.x - a.x);
    Some(if d < 0 { (-ux, -uy, -d) } else { (ux, uy, d) })
}

/// An isometry `v -> m v + t` of the plane preserving the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    m: [[i64; 2]; 2],
    t: [BigInt; 2],
}

impl LatticeIsometry {
    pub fn identity() -> Self {
        LatticeIsometry {
            m: [[1, 0], [0, 1]],
            t: [BigInt::zero(), BigInt::zero()],
        }
    }

    /// The eight linear symmetries of the square lattice (rotations by
    /// multiples of 90 degrees and the four reflections through the origin).
    pub fn point_group() -> [Self; 8] {
        let m = |a, b, c, d| LatticeIsometry {
            m: [[a, b], [c, d]],
            t: [BigInt::zero(), BigInt::zero()],
        };
        [
            m(1, 0, 0, 1),
            m(0, -1, 1, 0),
            m(-1, 0, 0, -1),
            m(0, 1, -1, 0),
            m(-1, 0, 0, 1),
            m(1, 0, 0, -1),
            m(0, 1, 1, 0),
            m(0, -1, -1, 0),
        ]
    }

    pub fn with_translation(mut self, tx: i64, ty: i64) -> Self {
        self.t[0] += tx;
        self.t[1] += ty;
        self
    }

    /// `step` applied after `self`.
    fn then(&self, step: &LatticeIsometry) -> LatticeIsometry {
        let s = &step.m;
        let a = &self.m;
        let m = [
            [
                s[0][0] * a[0][0] + s[0][1] * a[1][0],
                s[0][0] * a[0][1] + s[0][1] * a[1][1],
            ],
            [
                s[1][0] * a[0][0] + s[1][1] * a[1][0],
                s[1][0] * a[0][1] + s[1][1] * a[1][1],
            ],
        ];
        let t = [
            &self.t[0] * s[0][0] + &self.t[1] * s[0][1] + &step.t[0],
            &self.t[0] * s[1][0] + &self.t[1] * s[1][1] + &step.t[1],
        ];
        LatticeIsometry { m, t }
    }

    pub fn apply_rational(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let m = &self.m;
        let nx = x * &Rational::from(m[0][0])
            + y * &Rational::from(m[0][1])
            + Rational::from_integer(self.t[0].clone());
        let ny = x * &Rational::from(m[1][0])
            + y * &Rational::from(m[1][1])
            + Rational::from_integer(self.t[1].clone());
        (nx, ny)
    }

    pub fn apply_point(&self, p: LatticePoint) -> LatticePoint {
        let m = &self.m;
        let tx = self.t[0].to_i64().expect("translation fits in i64");
        let ty = self.t[1].to_i64().expect("translation fits in i64");
        LatticePoint {
            x: m[0][0] * p.x + m[0][1] * p.y + tx,
            y: m[1][0] * p.x + m[1][1] * p.y + ty,
        }
    }

    pub fn apply_circle(&self, c: &Circle) -> Circle {
        let (x, y) = self.apply_rational(c.cx(), c.cy());
        Circle::new(x, y, c.r2().clone()).expect("radius unchanged")
    }
}

/// Maps `c` into the key triangle; the radius and all point counts are unchanged.
pub fn canonicalize(c: &Circle) -> Circle {
    canonicalize_with_map(c).0
}

/// Like [`canonicalize`], also returning the isometry used.
pub fn canonicalize_with_map(c: &Circle) -> (Circle, LatticeIsometry) {
    let half = Rational::half();
    let one = Rational::one();
    let mut iso = LatticeIsometry::identity();

    let translate = LatticeIsometry {
        m: [[1, 0], [0, 1]],
        t: [-c.cx().floor(), -c.cy().floor()],
    };
    iso = iso.then(&translate);
    let (mut x, mut y) = iso.apply_rational(c.cx(), c.cy());

    if y > half {
        // y -> 1 - y
        let step = LatticeIsometry {
            m: [[1, 0], [0, -1]],
            t: [BigInt::zero(), BigInt::from(1)],
        };
        iso = iso.then(&step);
        (x, y) = step.apply_rational(&x, &y);
    }
    if x < half {
        // x -> 1 - x
        let step = LatticeIsometry {
            m: [[-1, 0], [0, 1]],
            t: [BigInt::from(1), BigInt::zero()],
        };
        iso = iso.then(&step);
        (x, y) = step.apply_rational(&x, &y);
    }
    if &x + &y > one {
        // (x, y) -> (1 - y, 1 - x)
        let step = LatticeIsometry {
            m: [[0, -1], [-1, 0]],
            t: [BigInt::from(1), BigInt::from(1)],
        };
        iso = iso.then(&step);
        (x, y) = step.apply_rational(&x, &y);
    }
    let out = Circle::new(x, y, c.r2().clone()).expect("radius unchanged");
    debug_assert!(KeyTriangle::contains(out.cx(), out.cy()));
    (out, iso)
}

/// All lattice points at squared distance exactly `r2` from the center.
pub fn boundary_points(c: &Circle) -> BTreeSet<LatticePoint> {
    let (_, hi) = rational_sqrt_bounds(c.r2()).expect("r2 > 0");
    let x_lo = ((c.cx() - &hi).floor() - 1u32)
        .to_i64()
        .expect("coordinate fits in i64");
    let x_hi = ((c.cx() + &hi).ceil() + 1u32)
        .to_i64()
        .expect("coordinate fits in i64");
    let mut out = BTreeSet::new();
    for x in x_lo..=x_hi {
        let dx = Rational::from(x) - c.cx();
        let rem = c.r2() - &dx.square();
        if rem.is_negative() {
            continue;
        }
        let Some(root) = crate::arith::exact_rational_sqrt(&rem) else {
            continue;
        };
        for y in [c.cy() + &root, c.cy() - &root] {
            if y.is_integer() {
                out.insert(LatticePoint::new(x, y.floor().to_i64().expect("fits")));
            }
        }
    }
    out
}

/// A circle centered in the key triangle in reduced integer form: center
/// `(x/d, y/d)` with `gcd(x, y, d) = 1`, squared radius `r/d^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct IntCircle {
    pub x: i64,
    pub y: i64,
    pub d: i64,
    pub r: i64,
}

impl IntCircle {
    pub fn key(&self) -> CircleKey {
        CircleKey {
            cx: Rational::frac(self.x, self.d),
            cy: Rational::frac(self.y, self.d),
            r2: Rational::frac(self.r, self.d * self.d),
        }
    }

    pub fn count(&self) -> PointCount {
        count_points_int(self.x, self.y, self.d, self.r)
    }

    /// Compares squared radii exactly.
    pub fn cmp_r2(&self, other: &IntCircle) -> Ordering {
        let (d1, d2) = (self.d as i128, other.d as i128);
        (self.r as i128 * d2 * d2).cmp(&(other.r as i128 * d1 * d1))
    }

    /// Lexicographic order on `(cx, cy, r2)`, matching `CircleKey`'s order.
    pub fn cmp_key(&self, other: &IntCircle) -> Ordering {
        let (d1, d2) = (self.d as i128, other.d as i128);
        (self.x as i128 * d2)
            .cmp(&(other.x as i128 * d1))
            .then((self.y as i128 * d2).cmp(&(other.y as i128 * d1)))
            .then_with(|| self.cmp_r2(other))
    }
}

/// Precomputed candidate points and admissible pairs for a radius bound.
pub(crate) struct TripleScan {
    points: Vec<LatticePoint>,
    /// For each point index `i`, the indices `j > i` such that the pair can
    /// lie on a common circle centered in the key triangle within the bound.
    partners: Vec<Vec<u32>>,
    b2_num: i128,
    b2_den: i128,
}

impl TripleScan {
    pub fn new(b2: &Rational) -> Result<Self> {
        if !b2.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "radius bound must be positive, got {b2}"
            )));
        }
        let b2_num = b2
            .numer()
            .to_i128()
            .ok_or_else(|| Error::InvalidArgument(format!("radius bound too large: {b2}")))?;
        let b2_den = b2
            .denom()
            .to_i128()
            .ok_or_else(|| Error::InvalidArgument(format!("radius bound too large: {b2}")))?;
        let (_, hi) = rational_sqrt_bounds(b2)?;
        let half = Rational::half();
        let to_i64 = |v: BigInt| {
            v.to_i64()
                .ok_or_else(|| Error::InvalidArgument(format!("radius bound too large: {b2}")))
        };
        let x_lo = to_i64((&half - &hi).floor() - 1)?;
        let x_hi = to_i64((Rational::one() + &hi).ceil() + 1)?;
        let y_lo = to_i64((-&hi).floor() - 1)?;
        let y_hi = to_i64((&half + &hi).ceil() + 1)?;
        if (x_hi - x_lo) > 4096 {
            return Err(Error::InvalidArgument(format!(
                "radius bound too large: {b2}"
            )));
        }

        // Keep points within sqrt(b2) of the rectangle [1/2, 1] x [0, 1/2]
        // that contains the key triangle. Work in doubled coordinates.
        let mut points = Vec::new();
        for x in x_lo..=x_hi {
            for y in y_lo..=y_hi {
                let (px, py) = (2 * x as i128, 2 * y as i128);
                let dx = if px < 1 {
                    1 - px
                } else if px > 2 {
                    px - 2
                } else {
                    0
                };
                let dy = if py < 0 {
                    -py
                } else if py > 1 {
                    py - 1
                } else {
                    0
                };
                // (dx^2 + dy^2) / 4 <= b2
                if (dx * dx + dy * dy) * b2_den <= 4 * b2_num {
                    points.push(LatticePoint::new(x, y));
                }
            }
        }
        points.sort();

        let partners = (0..points.len())
            .into_par_iter()
            .map(|i| {
                let a = points[i];
                (i + 1..points.len())
                    .filter(|&j| pair_admissible(a, points[j], b2_num, b2_den))
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();

        Ok(TripleScan {
            points,
            partners,
            b2_num,
            b2_den,
        })
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Visits every triple `i < j < k` whose circumcenter lies in the key
    /// triangle and whose squared circumradius is at most the bound. A
    /// circle with `m` boundary points is visited `C(m, 3)` times.
    pub fn visit_from<F: FnMut(IntCircle)>(&self, i: usize, mut visit: F) {
        let a = self.points[i];
        let list = &self.partners[i];
        for (pos, &j) in list.iter().enumerate() {
            let b = self.points[j as usize];
            for &k in &list[pos + 1..] {
                let c = self.points[k as usize];
                if let Some(circle) = self.triple_circle(a, b, c) {
                    visit(circle);
                }
            }
        }
    }

    fn triple_circle(
        &self,
        a: LatticePoint,
        b: LatticePoint,
        c: LatticePoint,
    ) -> Option<IntCircle> {
        let (ux, uy, d) = circumcenter_int(a, b, c)?;
        // key triangle: 2x >= d, y >= 0, x + y <= d
        if 2 * ux < d || uy < 0 || ux + uy > d {
            return None;
        }
        let g = ux.gcd(&uy).gcd(&d);
        let (x, y, d) = (ux / g, uy / g, d / g);
        let dx = a.x * d - x;
        let dy = a.y * d - y;
        let r = dx * dx + dy * dy;
        let dd = d as i128 * d as i128;
        if r as i128 * self.b2_den > self.b2_num * dd {
            return None;
        }
        Some(IntCircle { x, y, d, r })
    }

    /// Folds every visited circle in parallel over the first point index.
    /// `merge` must be associative and commutative for the result to be
    /// independent of scheduling.
    pub fn par_fold<A, I, V, M>(&self, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, IntCircle) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        (0..self.points.len())
            .into_par_iter()
            .fold(&init, |mut acc, i| {
                self.visit_from(i, |c| visit(&mut acc, c));
                acc
            })
            .reduce(&init, &merge)
    }
}

/// Whether the perpendicular bisector of `a b` meets the key triangle and the
/// chord is short enough for a circle within the bound.
fn pair_admissible(a: LatticePoint, b: LatticePoint, b2_num: i128, b2_den: i128) -> bool {
    let (dx, dy) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    // |ab|^2 <= 4 b2
    if (dx * dx + dy * dy) * b2_den > 4 * b2_num {
        return false;
    }
    // f(P) = 2 (b - a) . P - (|b|^2 - |a|^2) at the doubled vertices V:
    // f(V/2) = (b - a) . V - (|b|^2 - |a|^2)
    let c = (b.norm2() - a.norm2()) as i128;
    let f = |vx: i128, vy: i128| dx * vx + dy * vy - c;
    let vals = [f(1, 0), f(1, 1), f(2, 0)];
    !(vals.iter().all(|&v| v > 0) || vals.iter().all(|&v| v < 0))
}

/// Every distinct lattice circle centered in the key triangle with squared
/// radius at most `b2`, sorted by key.
pub fn enumerate_lattice_circles(b2: &Rational) -> Result<Vec<CircleKey>> {
    enumerate_lattice_circles_limited(b2, None)
}

/// As [`enumerate_lattice_circles`], keeping only circles with at most
/// `max_interior` interior points when a limit is given.
pub fn enumerate_lattice_circles_limited(
    b2: &Rational,
    max_interior: Option<u64>,
) -> Result<Vec<CircleKey>> {
    let scan = TripleScan::new(b2)?;
    let mut found: Vec<IntCircle> = scan.par_fold(
        Vec::new,
        |acc, c| {
            if max_interior.is_none_or(|m| c.count().interior <= m) {
                acc.push(c);
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    found.sort_by(|a, b| a.cmp_key(b));
    found.dedup();
    Ok(found.iter().map(IntCircle::key).collect())
}

/// Enumeration with the first-point index space split into `parts`
/// contiguous chunks, each processed on its own and merged afterwards.
pub fn enumerate_partitioned(b2: &Rational, parts: usize) -> Result<Vec<CircleKey>> {
    let scan = TripleScan::new(b2)?;
    let n = scan.point_count();
    let parts = parts.clamp(1, n.max(1));
    let chunk = n.div_ceil(parts).max(1);
    let mut merged = BTreeSet::new();
    for start in (0..n).step_by(chunk) {
        let mut local = BTreeSet::new();
        for i in start..(start + chunk).min(n) {
            scan.visit_from(i, |c| {
                local.insert(c.key());
            });
        }
        merged.append(&mut local);
    }
    Ok(merged.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_points;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn circumcircle_examples() {
        let c = circumcircle(p(0, 0), p(1, 0), p(0, 1)).unwrap();
        assert_eq!(c.cx(), &rat(1, 2));
        assert_eq!(c.cy(), &rat(1, 2));
        assert_eq!(c.r2(), &rat(1, 2));

        assert!(circumcircle(p(0, 0), p(2, 0), p(4, 0)).is_none());
        assert!(circumcircle(p(1, 1), p(1, 1), p(3, 5)).is_none());

        // Perpendicular bisectors of (0,3)-(1,-1): 2x - 8y = -7 and of
        // (0,3)-(-3,2): -6x - 2y = 4 meet at (-23/26, 17/26), r2 = 2125/338.
        let c = circumcircle(p(0, 3), p(1, -1), p(-3, 2)).unwrap();
        assert_eq!(c.cx(), &rat(-23, 26));
        assert_eq!(c.cy(), &rat(17, 26));
        assert_eq!(c.r2(), &rat(2125, 338));
        assert_eq!(count_points(&c).interior, 18);
        assert_eq!(count_points(&c).boundary, 3);
    }

    #[test]
    fn canonicalize_examples() {
        let c = Circle::new(rat(1, 2), rat(1, 2), rat(5, 2)).unwrap();
        assert_eq!(canonicalize(&c), c);

        let c = Circle::new(rat(27, 10), rat(39, 10), rat(3, 1)).unwrap();
        let k = canonicalize(&c);
        assert_eq!((k.cx(), k.cy()), (&rat(7, 10), &rat(1, 10)));

        let c = Circle::new(rat(3, 10), rat(1, 10), rat(2, 1)).unwrap();
        let k = canonicalize(&c);
        assert_eq!((k.cx(), k.cy()), (&rat(7, 10), &rat(1, 10)));
        assert_eq!(count_points(&c), count_points(&k));

        // lattice-point center goes to (1, 0)
        let c = Circle::new(rat(-3, 1), rat(5, 1), rat(1, 1)).unwrap();
        let k = canonicalize(&c);
        assert_eq!((k.cx(), k.cy()), (&rat(1, 1), &rat(0, 1)));
    }

    #[test]
    fn canonical_map_moves_boundary_points() {
        let c = circumcircle(p(0, 3), p(1, -1), p(-3, 2)).unwrap();
        let (k, iso) = canonicalize_with_map(&c);
        let mapped: BTreeSet<_> = boundary_points(&c)
            .into_iter()
            .map(|q| iso.apply_point(q))
            .collect();
        assert_eq!(mapped, boundary_points(&k));
    }

    #[test]
    fn boundary_examples() {
        let c = Circle::new(rat(1, 2), rat(1, 2), rat(1, 2)).unwrap();
        let pts: Vec<_> = boundary_points(&c).into_iter().collect();
        assert_eq!(pts, vec![p(0, 0), p(0, 1), p(1, 0), p(1, 1)]);

        let c = Circle::new(rat(1, 2), rat(1, 2), rat(5, 2)).unwrap();
        let expected: BTreeSet<_> = [
            p(-1, 0),
            p(-1, 1),
            p(0, 2),
            p(1, 2),
            p(2, 1),
            p(2, 0),
            p(1, -1),
            p(0, -1),
        ]
        .into();
        assert_eq!(boundary_points(&c), expected);

        let c = Circle::new(rat(0, 1), rat(0, 1), rat(3, 1)).unwrap();
        assert!(boundary_points(&c).is_empty());
    }

    #[test]
    fn enumerate_small_bounds() {
        let keys = enumerate_lattice_circles(&rat(1, 2)).unwrap();
        assert_eq!(
            keys,
            vec![CircleKey {
                cx: rat(1, 2),
                cy: rat(1, 2),
                r2: rat(1, 2)
            }]
        );

        let keys = enumerate_lattice_circles(&rat(5, 2)).unwrap();
        assert!(keys.contains(&CircleKey {
            cx: rat(1, 2),
            cy: rat(1, 2),
            r2: rat(5, 2)
        }));

        let keys = enumerate_lattice_circles(&rat(13, 1)).unwrap();
        assert!(keys.iter().any(|k| k.r2 == rat(13, 1)));

        assert!(enumerate_lattice_circles(&rat(0, 1)).is_err());
    }

    #[test]
    fn enumerated_circles_are_lattice_circles() {
        let keys = enumerate_lattice_circles(&rat(9, 1)).unwrap();
        for w in keys.windows(2) {
            assert!(w[0] < w[1]);
        }
        for k in &keys {
            assert!(KeyTriangle::contains(&k.cx, &k.cy));
            assert!(boundary_points(&k.circle()).len() >= 3, "{k}");
        }
    }

    #[test]
    fn partitioning_does_not_change_output() {
        let b2 = rat(9, 1);
        let all = enumerate_lattice_circles(&b2).unwrap();
        for parts in [1, 3, 7, 1000] {
            assert_eq!(enumerate_partitioned(&b2, parts).unwrap(), all);
        }
    }

    #[test]
    fn limit_filters_by_interior() {
        let b2 = rat(9, 1);
        let limited = enumerate_lattice_circles_limited(&b2, Some(5)).unwrap();
        assert!(!limited.is_empty());
        for k in &limited {
            assert!(count_points(&k.circle()).interior <= 5);
        }
    }
}
