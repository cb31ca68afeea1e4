//! MC classification.
//!
//! Step 1 builds the rho-table: for each interior count `n <= M`, the largest
//! squared radius over all lattice circles enclosing exactly `n` points.
//! Step 2 scans upward from the MC number 0. With `k` the last MC number, `n`
//! is MC iff `rho_n >= rho_k`; then `R_n = rho_n`, otherwise `R_n = R_k`.

use std::collections::BTreeMap;
use std::fmt;

use log::info;
use serde::{Deserialize, Serialize};

use crate::arith::{rational_sqrt_bounds, surd_normalize, Rational, SurdRadius};
use crate::enumerate::{boundary_points, CircleKey, IntCircle, LatticePoint, TripleScan};
use crate::error::{Error, Result};

/// Rational lower bound for pi.
pub fn pi_lo() -> Rational {
    Rational::frac(314_159_265, 100_000_000)
}

/// Rational upper bound for pi.
pub fn pi_hi() -> Rational {
    Rational::frac(314_159_266, 100_000_000)
}

/// A rational `b2 >= (sqrt(2) + sqrt(m / pi))^2`, rounded up to hundredths.
/// It strictly exceeds `R_n^2` for every `n <= m`.
pub fn radius_bound(m: u64) -> Result<Rational> {
    if m < 1 {
        return Err(Error::InvalidArgument("radius bound needs m >= 1".into()));
    }
    let (_, sqrt2_hi) = rational_sqrt_bounds(&Rational::from(2))?;
    let ratio = Rational::from(m as i64) / pi_lo();
    let (_, ratio_hi) = rational_sqrt_bounds(&ratio)?;
    let b2 = (sqrt2_hi + ratio_hi).square();
    let scaled = (b2 * Rational::from(100)).ceil();
    Ok(Rational::new(scaled, 100)?)
}

/// Conservative check of `n / pi < r2`.
pub fn lower_bound_holds(n: u64, r2: &Rational) -> bool {
    // n / pi < n / pi_lo, so n < r2 * pi_lo suffices.
    Rational::from(n as i64) < r2 * &pi_lo()
}

/// Conservative check of `sqrt(r2) < sqrt(2) + sqrt(n / pi)`.
pub fn upper_bound_holds(n: u64, r2: &Rational) -> bool {
    let (sqrt2_lo, _) = rational_sqrt_bounds(&Rational::from(2)).expect("positive");
    let ratio = Rational::from(n as i64) / pi_hi();
    let (ratio_lo, _) = rational_sqrt_bounds(&ratio).expect("nonnegative");
    *r2 < (sqrt2_lo + ratio_lo).square()
}

/// The largest lattice circle(s) enclosing a given number of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoEntry {
    pub rho2: Rational,
    /// Lexicographically smallest circle attaining `rho2`.
    pub witness: CircleKey,
    /// Every distinct circle in the key triangle attaining `rho2`, sorted.
    pub witnesses: Vec<CircleKey>,
    pub boundary: u64,
}

impl RhoEntry {
    pub fn multiplicity(&self) -> usize {
        self.witnesses.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoTable {
    pub max_n: u64,
    /// The enumeration bound the table was built with.
    pub b2: Rational,
    pub entries: BTreeMap<u64, RhoEntry>,
}

impl RhoTable {
    pub fn get(&self, n: u64) -> Option<&RhoEntry> {
        self.entries.get(&n)
    }

    /// `n <= max_n` with no lattice circle enclosing exactly `n` points.
    pub fn absent(&self) -> Vec<u64> {
        (0..=self.max_n)
            .filter(|n| !self.entries.contains_key(n))
            .collect()
    }

    /// Positions `n` where `rho_n^2 < rho_{n-1}^2`, both present.
    pub fn dips(&self) -> Vec<u64> {
        (1..=self.max_n)
            .filter(|&n| match (self.get(n - 1), self.get(n)) {
                (Some(prev), Some(cur)) => cur.rho2 < prev.rho2,
                _ => false,
            })
            .collect()
    }

    /// Restriction to `n <= max_n`. Valid because `rho_n` does not depend on
    /// the enumeration bound once the bound exceeds `R_n`.
    pub fn truncated(&self, max_n: u64) -> RhoTable {
        RhoTable {
            max_n,
            b2: self.b2.clone(),
            entries: self
                .entries
                .range(..=max_n)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
struct Best {
    top: IntCircle,
    ties: Vec<IntCircle>,
}

impl Best {
    fn offer(&mut self, c: IntCircle) {
        match c.cmp_r2(&self.top) {
            std::cmp::Ordering::Greater => {
                *self = Best {
                    top: c,
                    ties: vec![c],
                }
            }
            std::cmp::Ordering::Equal => {
                if !self.ties.contains(&c) {
                    self.ties.push(c);
                }
            }
            std::cmp::Ordering::Less => {}
        }
    }

    fn merge(mut self, other: Best) -> Best {
        match other.top.cmp_r2(&self.top) {
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Equal => {
                for c in other.ties {
                    if !self.ties.contains(&c) {
                        self.ties.push(c);
                    }
                }
                self
            }
            std::cmp::Ordering::Less => self,
        }
    }
}

/// Builds the rho-table for `0 <= n <= m` by enumerating every lattice
/// circle up to [`radius_bound`].
pub fn build_rho_table(m: u64) -> Result<RhoTable> {
    let b2 = radius_bound(m.max(1))?;
    build_rho_table_with_bound(m, &b2)
}

/// As [`build_rho_table`] with an explicit enumeration bound.
pub fn build_rho_table_with_bound(m: u64, b2: &Rational) -> Result<RhoTable> {
    let scan = TripleScan::new(b2)?;
    info!(
        "enumerating lattice circles: M={m}, b2={b2}, {} candidate points",
        scan.point_count()
    );
    let size = m as usize + 1;
    let bests: Vec<Option<Best>> = scan.par_fold(
        || vec![None; size],
        |acc: &mut Vec<Option<Best>>, c| {
            let count = c.count();
            if count.interior > m {
                return;
            }
            match &mut acc[count.interior as usize] {
                Some(best) => best.offer(c),
                slot @ None => {
                    *slot = Some(Best {
                        top: c,
                        ties: vec![c],
                    });
                }
            }
        },
        |a, b| {
            a.into_iter()
                .zip(b)
                .map(|pair| match pair {
                    (Some(x), Some(y)) => Some(x.merge(y)),
                    (x, None) => x,
                    (None, y) => y,
                })
                .collect()
        },
    );

    let mut entries = BTreeMap::new();
    for (n, best) in bests.into_iter().enumerate() {
        let Some(mut best) = best else { continue };
        best.ties.sort_by(|a, b| a.cmp_key(b));
        let witnesses: Vec<CircleKey> = best.ties.iter().map(IntCircle::key).collect();
        entries.insert(
            n as u64,
            RhoEntry {
                rho2: witnesses[0].r2.clone(),
                witness: witnesses[0].clone(),
                boundary: best.ties[0].count().boundary,
                witnesses,
            },
        );
    }
    Ok(RhoTable {
        max_n: m,
        b2: b2.clone(),
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Mc,
    NonMc,
}

impl std::str::FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mc" => Ok(Status::Mc),
            "non-mc" => Ok(Status::NonMc),
            _ => Err(Error::InvalidArgument(format!("unknown status {s:?}"))),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Mc => "mc",
            Status::NonMc => "non-mc",
        })
    }
}

/// Where `R_n` comes from: the number's own largest lattice circle, or the
/// nearest smaller MC number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Source {
    Own,
    Inherited(u64),
}

impl std::str::FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "own" {
            return Ok(Source::Own);
        }
        s.strip_prefix("inherited:")
            .and_then(|k| k.parse().ok())
            .map(Source::Inherited)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown source {s:?}")))
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Own => f.write_str("own"),
            Source::Inherited(k) => write!(f, "inherited:{k}"),
        }
    }
}

/// Length of the run of non-MC numbers right after an MC number. When the run
/// reaches the end of the computed range only a lower bound is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ImpactingIndex {
    Exact(u64),
    AtLeast(u64),
}

impl ImpactingIndex {
    pub fn lower_bound(&self) -> u64 {
        match *self {
            ImpactingIndex::Exact(v) | ImpactingIndex::AtLeast(v) => v,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match *self {
            ImpactingIndex::Exact(v) => Some(v),
            ImpactingIndex::AtLeast(_) => None,
        }
    }
}

impl std::str::FromStr for ImpactingIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad impacting index {s:?}"));
        match s.strip_prefix(">=") {
            Some(v) => v.parse().map(ImpactingIndex::AtLeast).map_err(|_| bad()),
            None => s.parse().map(ImpactingIndex::Exact).map_err(|_| bad()),
        }
    }
}

impl fmt::Display for ImpactingIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImpactingIndex::Exact(v) => write!(f, "{v}"),
            ImpactingIndex::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: u64,
    pub status: Status,
    /// `R_n^2`
    pub r2: Rational,
    pub surd: SurdRadius,
    pub source: Source,
    /// Set for MC rows only.
    pub impacting_index: Option<ImpactingIndex>,
    /// `rho_n^2`, when some lattice circle encloses exactly `n` points.
    pub rho2: Option<Rational>,
    /// The MC-circle, for MC rows.
    pub witness: Option<CircleKey>,
    pub witness_boundary: Option<Vec<LatticePoint>>,
}

impl Classification {
    pub fn is_mc(&self) -> bool {
        self.status == Status::Mc
    }

    /// `I_n > 0`. For a run cut off by the end of the range this uses the
    /// observed lower bound.
    pub fn strong(&self) -> bool {
        self.impacting_index.is_some_and(|i| i.lower_bound() > 0)
    }
}

/// Builds the rho-table for `m` and classifies every `0 <= n <= m`.
pub fn classify(m: u64) -> Result<Vec<Classification>> {
    let table = build_rho_table(m)?;
    Ok(classify_table(&table))
}

/// Classifies every `0 <= n <= table.max_n` from a rho-table.
pub fn classify_table(table: &RhoTable) -> Vec<Classification> {
    let mut rows: Vec<Classification> = Vec::with_capacity(table.max_n as usize + 1);
    let mut last_mc: Option<(u64, Rational)> = None;
    for n in 0..=table.max_n {
        let entry = table.get(n);
        let rho2 = entry.map(|e| e.rho2.clone());
        let is_mc = match (&last_mc, &rho2) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some((_, rk)), Some(rn)) => rn >= rk,
        };
        let row = if is_mc {
            let entry = entry.expect("MC rows have an entry");
            last_mc = Some((n, entry.rho2.clone()));
            Classification {
                n,
                status: Status::Mc,
                r2: entry.rho2.clone(),
                surd: surd_normalize(&entry.rho2).expect("positive radius"),
                source: Source::Own,
                impacting_index: None,
                rho2,
                witness: Some(entry.witness.clone()),
                witness_boundary: Some(
                    boundary_points(&entry.witness.circle())
                        .into_iter()
                        .collect(),
                ),
            }
        } else {
            let (k, rk) = last_mc.clone().expect("0 is MC");
            Classification {
                n,
                status: Status::NonMc,
                surd: surd_normalize(&rk).expect("positive radius"),
                r2: rk,
                source: Source::Inherited(k),
                impacting_index: None,
                rho2,
                witness: None,
                witness_boundary: None,
            }
        };
        rows.push(row);
    }
    let indices = impacting_index(&rows);
    for row in &mut rows {
        row.impacting_index = indices.get(&row.n).copied();
    }
    rows
}

/// `I_n` for every MC `n`: the number of consecutive non-MC numbers right
/// after `n`. Runs that reach the last classified number are `AtLeast`.
pub fn impacting_index(rows: &[Classification]) -> BTreeMap<u64, ImpactingIndex> {
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i < rows.len() {
        if rows[i].is_mc() {
            let run = rows[i + 1..].iter().take_while(|r| !r.is_mc()).count();
            let terminated = i + 1 + run < rows.len();
            let idx = if terminated {
                ImpactingIndex::Exact(run as u64)
            } else {
                ImpactingIndex::AtLeast(run as u64)
            };
            out.insert(rows[i].n, idx);
            i += run + 1;
        } else {
            i += 1;
        }
    }
    out
}
