//! Slow reference implementations and theorem checks.
//!
//! Nothing here reuses the scan windows, pruning or canonicalization of the
//! main pipeline: points are found by plain double loops over generous boxes,
//! circumcenters are solved with rationals, and centers are folded into the key
//! triangle by trying every lattice symmetry.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::classify::{lower_bound_holds, upper_bound_holds, Classification, Source};
use crate::counting::{Circle, PointCount};
use crate::enumerate::{CircleKey, LatticePoint};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub subject: String,
    pub agreement: bool,
    pub first_divergence: Option<String>,
}

impl OracleReport {
    pub fn new(subject: impl Into<String>, first_divergence: Option<String>) -> Self {
        OracleReport {
            subject: subject.into(),
            agreement: first_divergence.is_none(),
            first_divergence,
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_divergence {
            None => write!(f, "{}: agree", self.subject),
            Some(d) => write!(f, "{}: DISAGREE ({d})", self.subject),
        }
    }
}

/// Smallest nonnegative integer `h` with `h^2 >= x`.
fn int_radius(x: &Rational) -> i64 {
    let mut h = 0i64;
    while Rational::from(h * h) < *x {
        h += 1;
    }
    h
}

/// Interior and boundary counts by testing every point of a box that
/// comfortably contains the disc.
pub fn naive_count(c: &Circle) -> PointCount {
    let h = int_radius(c.r2()) + 2;
    let x0 = c.cx().floor().to_i64().expect("center fits in i64");
    let y0 = c.cy().floor().to_i64().expect("center fits in i64");
    let mut out = PointCount::default();
    for x in (x0 - h)..=(x0 + h + 1) {
        for y in (y0 - h)..=(y0 + h + 1) {
            let dx = Rational::from(x) - c.cx();
            let dy = Rational::from(y) - c.cy();
            let d2 = &dx * &dx + &dy * &dy;
            if d2 < *c.r2() {
                out.interior += 1;
            } else if d2 == *c.r2() {
                out.boundary += 1;
            }
        }
    }
    out
}

/// Circumcircle by solving the two perpendicular-bisector equations.
fn solve_circumcircle(
    p: LatticePoint,
    q: LatticePoint,
    s: LatticePoint,
) -> Option<(Rational, Rational, Rational)> {
    // 2(q - p) . c = |q|^2 - |p|^2, same for s.
    let a1 = Rational::from(2 * (q.x - p.x));
    let b1 = Rational::from(2 * (q.y - p.y));
    let c1 = Rational::from(q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y);
    let a2 = Rational::from(2 * (s.x - p.x));
    let b2 = Rational::from(2 * (s.y - p.y));
    let c2 = Rational::from(s.x * s.x + s.y * s.y - p.x * p.x - p.y * p.y);
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return None;
    }
    let cx = (&c1 * &b2 - &c2 * &b1) / det.clone();
    let cy = (&a1 * &c2 - &a2 * &c1) / det;
    let dx = Rational::from(p.x) - &cx;
    let dy = Rational::from(p.y) - &cy;
    let r2 = &dx * &dx + &dy * &dy;
    Some((cx, cy, r2))
}

fn in_key_triangle(x: &Rational, y: &Rational) -> bool {
    *x >= Rational::frac(1, 2) && *y >= Rational::zero() && x + y <= Rational::one()
}

/// Tries all eight point symmetries followed by an integer translation and
/// returns the lexicographically smallest image center inside the key triangle.
fn fold_center(x: &Rational, y: &Rational) -> (Rational, Rational) {
    let images = [
        (x.clone(), y.clone()),
        (-x.clone(), y.clone()),
        (x.clone(), -y.clone()),
        (-x.clone(), -y.clone()),
        (y.clone(), x.clone()),
        (-y.clone(), x.clone()),
        (y.clone(), -x.clone()),
        (-y.clone(), -x.clone()),
    ];
    images
        .into_iter()
        .flat_map(|(u, v)| {
            let fu = Rational::from_integer(u.floor());
            let fv = Rational::from_integer(v.floor());
            let (u, v) = (u - fu, v - fv);
            // Δ touches u = 1 and v = 1, which fractional parts never reach.
            [
                (u.clone(), v.clone()),
                (u.clone() + Rational::one(), v.clone()),
                (u, v + Rational::one()),
            ]
        })
        .filter(|(u, v)| in_key_triangle(u, v))
        .min()
        .expect("every center has an image in the key triangle")
}

/// Every lattice circle with center in the key triangle and `r2 <= b2`, from
/// all triples of points in a box. Restricted to `b2 <= 9`.
pub fn naive_enumerate(b2: &Rational) -> Result<BTreeSet<CircleKey>> {
    if !b2.is_positive() {
        return Err(Error::InvalidArgument("b2 must be positive".into()));
    }
    if *b2 > Rational::from(9) {
        return Err(Error::OracleScale(format!(
            "naive enumeration is limited to b2 <= 9, got {b2}"
        )));
    }
    let h = int_radius(b2);
    let mut pts = Vec::new();
    for x in (-h - 1)..=(h + 2) {
        for y in (-h - 1)..=(h + 2) {
            pts.push(LatticePoint::new(x, y));
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            for k in (j + 1)..pts.len() {
                let Some((cx, cy, r2)) = solve_circumcircle(pts[i], pts[j], pts[k]) else {
                    continue;
                };
                if r2 > *b2 {
                    continue;
                }
                let (cx, cy) = fold_center(&cx, &cy);
                out.insert(CircleKey { cx, cy, r2 });
            }
        }
    }
    Ok(out)
}

/// Compares the enumerator against [`naive_enumerate`].
pub fn check_enumeration(b2: &Rational) -> Result<OracleReport> {
    let expected = naive_enumerate(b2)?;
    let got: BTreeSet<CircleKey> = crate::enumerate::enumerate_lattice_circles(b2)?
        .into_iter()
        .collect();
    let divergence = expected.symmetric_difference(&got).next().map(|k| {
        let side = if expected.contains(k) {
            "missing from enumerator"
        } else {
            "extra in enumerator"
        };
        format!("{k} {side}")
    });
    Ok(OracleReport::new(
        format!("enumeration b2={b2}"),
        divergence,
    ))
}

/// Compares `count_points` against [`naive_count`] on the given circles.
pub fn check_counts<'a>(circles: impl IntoIterator<Item = &'a Circle>) -> OracleReport {
    let divergence = circles.into_iter().find_map(|c| {
        let fast = crate::counting::count_points(c);
        let slow = naive_count(c);
        (fast != slow).then(|| format!("{c:?}: count_points {fast:?}, naive {slow:?}"))
    });
    OracleReport::new("count_points vs naive", divergence)
}

/// Reproducible random circles with small rational centers and radii.
pub fn random_circles(seed: u64, count: usize) -> Vec<Circle> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut frac = |lo: i64, hi: i64| {
                let den = rng.gen_range(1..=12);
                Rational::frac(rng.gen_range(lo * den..=hi * den), den)
            };
            let cx = frac(-3, 3);
            let cy = frac(-3, 3);
            let r2 = loop {
                let r = frac(0, 40);
                if r.is_positive() {
                    break r;
                }
            };
            Circle::new(cx, cy, r2).expect("positive radius")
        })
        .collect()
}

fn first_failure<I: IntoIterator<Item = Option<String>>>(it: I) -> Option<String> {
    it.into_iter().flatten().next()
}

/// Consistency checks every classification run must pass. Rows must be
/// `0..=M` in order.
pub fn theorem_suite(rows: &[Classification]) -> Vec<OracleReport> {
    let mut reports = Vec::new();

    let order = first_failure(
        rows.iter()
            .enumerate()
            .map(|(i, r)| (r.n != i as u64).then(|| format!("row {i} has n={}", r.n))),
    );
    reports.push(OracleReport::new("rows cover 0..=M", order));

    let monotone = first_failure(rows.windows(2).map(|w| {
        (w[1].r2 < w[0].r2)
            .then(|| format!("R_{}^2={} < R_{}^2={}", w[1].n, w[1].r2, w[0].n, w[0].r2))
    }));
    reports.push(OracleReport::new("R_n non-decreasing", monotone));

    let lower = first_failure(rows.iter().map(|r| {
        (!lower_bound_holds(r.n, &r.r2)).then(|| format!("n={} r2={} fails n/pi < R^2", r.n, r.r2))
    }));
    reports.push(OracleReport::new("lower radius bound", lower));

    let upper = first_failure(rows.iter().map(|r| {
        (!upper_bound_holds(r.n, &r.r2))
            .then(|| format!("n={} r2={} fails R < sqrt2 + sqrt(n/pi)", r.n, r.r2))
    }));
    reports.push(OracleReport::new("upper radius bound", upper));

    let mut last_mc: Option<&Classification> = None;
    let mut lubor = None;
    let mut strict = None;
    for r in rows {
        if r.is_mc() {
            if r.source != Source::Own && lubor.is_none() {
                lubor = Some(format!("MC n={} has source {}", r.n, r.source));
            }
            last_mc = Some(r);
            continue;
        }
        let Some(k) = last_mc else {
            lubor.get_or_insert_with(|| format!("non-MC n={} has no MC predecessor", r.n));
            continue;
        };
        if lubor.is_none() && (r.source != Source::Inherited(k.n) || r.r2 != k.r2) {
            lubor = Some(format!(
                "n={}: r2={} source {}, expected {} from {}",
                r.n, r.r2, r.source, k.r2, k.n
            ));
        }
        if let Some(rho) = &r.rho2 {
            if strict.is_none() && *rho >= k.r2 {
                strict = Some(format!(
                    "n={}: rho^2={} not below R_{}^2={}",
                    r.n, rho, k.n, k.r2
                ));
            }
        }
    }
    reports.push(OracleReport::new("non-MC radius inherited", lubor));
    reports.push(OracleReport::new(
        "non-MC rho below inherited radius",
        strict,
    ));

    let witness = first_failure(rows.iter().filter(|r| r.is_mc()).map(|r| {
        let Some(w) = &r.witness else {
            return Some(format!("MC n={} has no witness", r.n));
        };
        if w.r2 != r.r2 {
            return Some(format!("n={}: witness r2 {} != {}", r.n, w.r2, r.r2));
        }
        if r.rho2.as_ref() != Some(&r.r2) {
            return Some(format!("n={}: rho^2 differs from R^2", r.n));
        }
        if !in_key_triangle(&w.cx, &w.cy) {
            return Some(format!(
                "n={}: witness center outside the key triangle",
                r.n
            ));
        }
        let c = w.circle();
        let count = naive_count(&c);
        if count.interior != r.n || count.boundary < 3 {
            return Some(format!(
                "n={}: witness encloses {} with {} on the boundary",
                r.n, count.interior, count.boundary
            ));
        }
        if let Some(b) = &r.witness_boundary {
            if b.len() as u64 != count.boundary {
                return Some(format!(
                    "n={}: {} boundary points listed, {} found",
                    r.n,
                    b.len(),
                    count.boundary
                ));
            }
            if let Some(p) = b.iter().find(|p| c.dist2(&p.x.into(), &p.y.into()) != r.r2) {
                return Some(format!("n={}: listed point {p} is off the circle", r.n));
            }
        }
        None
    }));
    reports.push(OracleReport::new("MC witness consistent", witness));

    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(cx: Rational, cy: Rational, r2: Rational) -> Circle {
        Circle::new(cx, cy, r2).unwrap()
    }

    #[test]
    fn naive_count_examples() {
        let c = circle(Rational::half(), Rational::half(), Rational::frac(5, 2));
        assert_eq!(
            naive_count(&c),
            PointCount {
                interior: 4,
                boundary: 8
            }
        );
        let c = circle(Rational::zero(), Rational::zero(), Rational::one());
        assert_eq!(
            naive_count(&c),
            PointCount {
                interior: 1,
                boundary: 4
            }
        );
        let c = circle(
            Rational::frac(1, 3),
            Rational::frac(1, 7),
            Rational::from(2),
        );
        assert_eq!(naive_count(&c), crate::counting::count_points(&c));
    }

    #[test]
    fn naive_enumerate_small() {
        let got = naive_enumerate(&Rational::half()).unwrap();
        let only = CircleKey {
            cx: Rational::half(),
            cy: Rational::half(),
            r2: Rational::half(),
        };
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![only]);
        let got = naive_enumerate(&Rational::frac(5, 2)).unwrap();
        assert!(got.contains(&CircleKey {
            cx: Rational::half(),
            cy: Rational::half(),
            r2: Rational::frac(5, 2)
        }));
        assert!(matches!(
            naive_enumerate(&Rational::from(10)),
            Err(Error::OracleScale(_))
        ));
    }

    #[test]
    fn fold_lands_in_triangle() {
        for (x, y) in [(-3, 7), (5, 2), (9, -4), (-1, -1), (2, 11)] {
            let (u, v) = fold_center(&Rational::frac(x, 6), &Rational::frac(y, 5));
            assert!(in_key_triangle(&u, &v));
        }
    }

    #[test]
    fn theorem_suite_small_run_agrees() {
        let rows = crate::classify::classify(6).unwrap();
        let reports = theorem_suite(&rows);
        assert!(reports.iter().all(|r| r.agreement), "{reports:?}");
    }

    #[test]
    fn theorem_suite_flags_mutation() {
        let mut rows = crate::classify::classify(6).unwrap();
        rows[5].r2 = Rational::frac(12, 5);
        let reports = theorem_suite(&rows);
        let lubor = reports
            .iter()
            .find(|r| r.subject == "non-MC radius inherited")
            .unwrap();
        assert!(!lubor.agreement);
    }
}
