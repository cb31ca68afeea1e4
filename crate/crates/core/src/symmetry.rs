//! Mirror symmetries of the boundary lattice points of MC-circles.
//!
//! An axis is lattice invariant when reflecting across it maps the integer
//! lattice onto itself: `x = c` or `y = c` with `2c` an integer, or
//! `y = ±x + m` with `m` an integer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::classify::{Classification, RhoTable};
use crate::counting::Circle;
use crate::enumerate::{boundary_points, LatticePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxisFamily {
    Vertical,
    Horizontal,
    /// slope +1
    Diagonal,
    /// slope -1
    Antidiagonal,
    General,
}

/// A mirror line through a circle's center.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MirrorAxis {
    pub family: AxisFamily,
    /// `x = offset`, `y = offset`, `y = x + offset`, `y = -x + offset`, or for
    /// general axes `b x - a y = offset` with direction `(a, b)`.
    pub offset: Rational,
    /// Primitive integer direction, first nonzero component positive.
    pub direction: (i64, i64),
    pub lattice_invariant: bool,
}

impl MirrorAxis {
    /// The axis through `(cx, cy)` with the given primitive direction.
    pub fn through(cx: &Rational, cy: &Rational, direction: (i64, i64)) -> Self {
        let direction = normalize_direction(direction.0, direction.1);
        let two = Rational::from(2);
        let (family, offset, lattice_invariant) = match direction {
            (0, 1) => (AxisFamily::Vertical, cx.clone(), (cx * &two).is_integer()),
            (1, 0) => (AxisFamily::Horizontal, cy.clone(), (cy * &two).is_integer()),
            (1, 1) => {
                let m = cy - cx;
                let inv = m.is_integer();
                (AxisFamily::Diagonal, m, inv)
            }
            (1, -1) => {
                let m = cy + cx;
                let inv = m.is_integer();
                (AxisFamily::Antidiagonal, m, inv)
            }
            (a, b) => {
                let off = cx * &Rational::from(b) - cy * &Rational::from(a);
                (AxisFamily::General, off, false)
            }
        };
        MirrorAxis {
            family,
            offset,
            direction,
            lattice_invariant,
        }
    }

    /// Reflection of `p` across this axis, which passes through `(cx, cy)`.
    pub fn reflect(
        &self,
        cx: &Rational,
        cy: &Rational,
        p: (&Rational, &Rational),
    ) -> (Rational, Rational) {
        let (a, b) = (
            Rational::from(self.direction.0),
            Rational::from(self.direction.1),
        );
        let vx = p.0 - cx;
        let vy = p.1 - cy;
        let dd = &a * &a + &b * &b;
        let t = (&a * &vx + &b * &vy) / dd;
        let two_t = &t + &t;
        let rx = cx + &(&two_t * &a) - &vx;
        let ry = cy + &(&two_t * &b) - &vy;
        (rx, ry)
    }

    /// Reflects a lattice point; `None` when the image is not a lattice point.
    pub fn reflect_point(&self, c: &Circle, p: LatticePoint) -> Option<LatticePoint> {
        let (x, y) = self.reflect(c.cx(), c.cy(), (&Rational::from(p.x), &Rational::from(p.y)));
        if x.is_integer() && y.is_integer() {
            Some(LatticePoint::new(x.floor().to_i64()?, y.floor().to_i64()?))
        } else {
            None
        }
    }

    pub fn is_slant(&self) -> bool {
        matches!(self.family, AxisFamily::Diagonal | AxisFamily::Antidiagonal)
    }

    pub fn is_horizontal_or_vertical(&self) -> bool {
        matches!(self.family, AxisFamily::Vertical | AxisFamily::Horizontal)
    }
}

impl fmt::Display for MirrorAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            AxisFamily::Vertical => write!(f, "x={}", self.offset),
            AxisFamily::Horizontal => write!(f, "y={}", self.offset),
            AxisFamily::Diagonal => write!(f, "y=x{}", signed(&self.offset)),
            AxisFamily::Antidiagonal => write!(f, "y=-x{}", signed(&self.offset)),
            AxisFamily::General => {
                let (a, b) = self.direction;
                write!(f, "{b}x-{a}y={}", self.offset)
            }
        }
    }
}

fn signed(r: &Rational) -> String {
    if r.is_zero() {
        String::new()
    } else if r.is_negative() {
        format!("-{}", r.abs())
    } else {
        format!("+{r}")
    }
}

fn normalize_direction(a: i64, b: i64) -> (i64, i64) {
    let g = a.gcd(&b).max(1);
    let (a, b) = (a / g, b / g);
    if a < 0 || (a == 0 && b < 0) {
        (-a, -b)
    } else {
        (a, b)
    }
}

/// Primitive integer direction of a nonzero rational vector.
fn direction_of(vx: &Rational, vy: &Rational) -> Option<(i64, i64)> {
    if vx.is_zero() && vy.is_zero() {
        return None;
    }
    let l = vx.denom().lcm(vy.denom());
    let a = (vx * &Rational::from_integer(l.clone())).floor();
    let b = (vy * &Rational::from_integer(l)).floor();
    let g = num_integer::Integer::gcd(&a, &b);
    let (a, b) = (a / &g, b / &g);
    Some(normalize_direction(a.to_i64()?, b.to_i64()?))
}

/// The lattice-invariant axes through the circle's center. Each of them maps
/// the circle's boundary lattice points onto themselves.
pub fn lattice_axes(c: &Circle) -> Vec<MirrorAxis> {
    [(0, 1), (1, 0), (1, 1), (1, -1)]
        .into_iter()
        .map(|d| MirrorAxis::through(c.cx(), c.cy(), d))
        .filter(|a| a.lattice_invariant)
        .collect()
}

/// Every line through the center whose reflection maps `points` onto itself.
pub fn geometric_axes(points: &BTreeSet<LatticePoint>, c: &Circle) -> Vec<MirrorAxis> {
    let pts: Vec<LatticePoint> = points.iter().copied().collect();
    let mut candidates = BTreeSet::new();
    for p in &pts {
        let vx = Rational::from(p.x) - c.cx();
        let vy = Rational::from(p.y) - c.cy();
        if let Some(d) = direction_of(&vx, &vy) {
            candidates.insert(d);
        }
    }
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            candidates.insert(normalize_direction(-(q.y - p.y), q.x - p.x));
        }
    }
    candidates
        .into_iter()
        .map(|d| MirrorAxis::through(c.cx(), c.cy(), d))
        .filter(|axis| {
            pts.iter().all(|&p| {
                axis.reflect_point(c, p)
                    .is_some_and(|img| points.contains(&img))
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bucket {
    TwoPlusAxes,
    Slant45,
    OneHvAxis,
    Asymmetric3pt,
    Asymmetric4pt,
    Other,
}

impl Bucket {
    pub const ALL: [Bucket; 6] = [
        Bucket::TwoPlusAxes,
        Bucket::Slant45,
        Bucket::OneHvAxis,
        Bucket::Asymmetric3pt,
        Bucket::Asymmetric4pt,
        Bucket::Other,
    ];

    /// Precedence: two or more lattice axes; else the single lattice axis is
    /// slant or horizontal/vertical; else no lattice axis, split by the number
    /// of boundary points (3, 4, more).
    pub fn assign(boundary_count: usize, lattice_axes: &[MirrorAxis]) -> Bucket {
        match lattice_axes {
            [] => match boundary_count {
                3 => Bucket::Asymmetric3pt,
                4 => Bucket::Asymmetric4pt,
                _ => Bucket::Other,
            },
            [axis] if axis.is_slant() => Bucket::Slant45,
            [_] => Bucket::OneHvAxis,
            _ => Bucket::TwoPlusAxes,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Bucket::TwoPlusAxes => "two-plus-axes",
            Bucket::Slant45 => "slant-45",
            Bucket::OneHvAxis => "one-hv-axis",
            Bucket::Asymmetric3pt => "asymmetric-3pt",
            Bucket::Asymmetric4pt => "asymmetric-4pt",
            Bucket::Other => "other",
        }
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub n: u64,
    pub strong: bool,
    pub boundary_count: usize,
    pub lattice_axes: Vec<MirrorAxis>,
    pub geometric_axes_count: usize,
    pub bucket: Bucket,
}

impl SymmetryReport {
    pub fn has_slant_axis(&self) -> bool {
        self.lattice_axes.iter().any(MirrorAxis::is_slant)
    }

    /// Exactly one lattice axis, horizontal or vertical.
    pub fn only_one_hv_axis(&self) -> bool {
        self.lattice_axes.len() == 1 && self.lattice_axes[0].is_horizontal_or_vertical()
    }
}

pub fn analyze(n: u64, strong: bool, c: &Circle) -> SymmetryReport {
    let points = boundary_points(c);
    let lattice = lattice_axes(c);
    let geometric = geometric_axes(&points, c);
    SymmetryReport {
        n,
        strong,
        boundary_count: points.len(),
        bucket: Bucket::assign(points.len(), &lattice),
        lattice_axes: lattice,
        geometric_axes_count: geometric.len(),
    }
}

/// Counts for one bin of `n`. `buckets` is exclusive; the other fields may
/// overlap.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinCounts {
    pub mc: u64,
    pub strong: u64,
    pub buckets: BTreeMap<Bucket, u64>,
    /// At least one lattice-invariant axis.
    pub lattice_symmetric: u64,
    /// At least one mirror axis of any kind.
    pub geometric_symmetric: u64,
    pub slant: u64,
    pub only_one_hv: u64,
    pub two_plus: u64,
}

impl BinCounts {
    fn add(&mut self, r: &SymmetryReport) {
        self.mc += 1;
        self.strong += r.strong as u64;
        *self.buckets.entry(r.bucket).or_default() += 1;
        self.lattice_symmetric += !r.lattice_axes.is_empty() as u64;
        self.geometric_symmetric += (r.geometric_axes_count > 0) as u64;
        self.slant += r.has_slant_axis() as u64;
        self.only_one_hv += r.only_one_hv_axis() as u64;
        self.two_plus += (r.lattice_axes.len() >= 2) as u64;
    }
}

/// Witness-based symmetry census over all MC rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub bin_width: u64,
    pub reports: Vec<SymmetryReport>,
    /// Keyed by `n / bin_width`.
    pub bins: BTreeMap<u64, BinCounts>,
    pub totals: BinCounts,
}

pub fn symmetry_census(rows: &[Classification], table: &RhoTable) -> Census {
    let bin_width = 100;
    let reports: Vec<SymmetryReport> = rows
        .par_iter()
        .filter(|r| r.is_mc())
        .filter_map(|r| {
            let entry = table.get(r.n)?;
            Some(analyze(r.n, r.strong(), &entry.witness.circle()))
        })
        .collect();
    let mut bins: BTreeMap<u64, BinCounts> = BTreeMap::new();
    let mut totals = BinCounts::default();
    for r in &reports {
        bins.entry(r.n / bin_width).or_default().add(r);
        totals.add(r);
    }
    Census {
        bin_width,
        reports,
        bins,
        totals,
    }
}

/// Whether `a` is the image of `b` under some lattice-preserving isometry.
pub fn congruent_under_lattice(a: &BTreeSet<LatticePoint>, b: &BTreeSet<LatticePoint>) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(&a0) = a.iter().next() else {
        return true;
    };
    crate::enumerate::LatticeIsometry::point_group()
        .into_iter()
        .any(|g| {
            let img: BTreeSet<LatticePoint> = b.iter().map(|&p| g.apply_point(p)).collect();
            let m0 = *img.iter().next().expect("nonempty");
            let (tx, ty) = (a0.x - m0.x, a0.y - m0.y);
            img.iter()
                .map(|p| LatticePoint::new(p.x + tx, p.y + ty))
                .collect::<BTreeSet<_>>()
                == *a
        })
}
