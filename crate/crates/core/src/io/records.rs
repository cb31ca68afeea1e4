//! Classification output as CSV or versioned JSON.
//!
//! CSV columns: `n,status,r2_num,r2_den,surd_s,surd_d,surd_q,source,impacting_index`,
//! plus `approx` (`R_n` to 6 decimals) when requested. An impacting index that
//! reaches the end of the range is written `>=k`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{surd_normalize, Rational, SurdRadius};
use crate::classify::{Classification, ImpactingIndex, Source, Status};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 9] = [
    "n",
    "status",
    "r2_num",
    "r2_den",
    "surd_s",
    "surd_d",
    "surd_q",
    "source",
    "impacting_index",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurdParts {
    pub s: u64,
    pub d: u64,
    pub q: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexValue {
    pub value: u64,
    /// `false` when the run of non-MC numbers reaches the end of the range.
    pub exact: bool,
}

impl From<ImpactingIndex> for IndexValue {
    fn from(i: ImpactingIndex) -> Self {
        IndexValue {
            value: i.lower_bound(),
            exact: i.exact().is_some(),
        }
    }
}

impl From<IndexValue> for ImpactingIndex {
    fn from(v: IndexValue) -> Self {
        if v.exact {
            ImpactingIndex::Exact(v.value)
        } else {
            ImpactingIndex::AtLeast(v.value)
        }
    }
}

/// One output row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub n: u64,
    #[serde(with = "as_string")]
    pub status: Status,
    pub r2: Fraction,
    pub surd: SurdParts,
    #[serde(with = "as_string")]
    pub source: Source,
    pub impacting_index: Option<IndexValue>,
    pub witness_boundary: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordSet {
    pub schema_version: u32,
    pub max_n: u64,
    pub records: Vec<ClassificationRecord>,
}

mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

fn to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("{v} does not fit in 64 bits")))
}

fn biguint_u64(v: &BigUint) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("{v} does not fit in 64 bits")))
}

/// `sqrt(r2)` rounded to 6 decimals.
pub fn approx_radius(r2: &Rational) -> String {
    format!("{:.6}", r2.to_f64().sqrt())
}

impl ClassificationRecord {
    pub fn from_classification(c: &Classification, approx: bool) -> Result<Self> {
        Ok(ClassificationRecord {
            n: c.n,
            status: c.status,
            r2: Fraction {
                num: to_u64(c.r2.numer())?,
                den: to_u64(c.r2.denom())?,
            },
            surd: SurdParts {
                s: biguint_u64(&c.surd.s)?,
                d: biguint_u64(&c.surd.d)?,
                q: biguint_u64(&c.surd.q)?,
            },
            source: c.source,
            impacting_index: c.impacting_index.map(IndexValue::from),
            witness_boundary: c
                .witness_boundary
                .as_ref()
                .map(|pts| pts.iter().map(|p| [p.x, p.y]).collect()),
            approx: approx.then(|| approx_radius(&c.r2)),
        })
    }

    pub fn r2(&self) -> Result<Rational> {
        Ok(Rational::new(self.r2.num, self.r2.den)?)
    }

    pub fn surd(&self) -> SurdRadius {
        SurdRadius {
            s: self.surd.s.into(),
            d: self.surd.d.into(),
            q: self.surd.q.into(),
        }
    }

    /// The surd must square to `r2` and be in normal form.
    pub fn check(&self) -> Result<()> {
        let r2 = self.r2()?;
        if surd_normalize(&r2)? != self.surd() {
            return Err(Error::InvalidArgument(format!(
                "n={}: surd does not match r2 {r2}",
                self.n
            )));
        }
        Ok(())
    }
}

pub fn to_records(rows: &[Classification], approx: bool) -> Result<Vec<ClassificationRecord>> {
    rows.iter()
        .map(|r| ClassificationRecord::from_classification(r, approx))
        .collect()
}

pub fn write_csv(records: &[ClassificationRecord]) -> String {
    let approx = records.iter().any(|r| r.approx.is_some());
    let mut out = CSV_COLUMNS.join(",");
    if approx {
        out.push_str(",approx");
    }
    out.push('\n');
    for r in records {
        let idx = r
            .impacting_index
            .map(|i| ImpactingIndex::from(i).to_string())
            .unwrap_or_default();
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n, r.status, r.r2.num, r.r2.den, r.surd.s, r.surd.d, r.surd.q, r.source, idx
        );
        if approx {
            let _ = write!(out, ",{}", r.approx.as_deref().unwrap_or(""));
        }
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<ClassificationRecord>> {
    let mut lines = text.lines().enumerate();
    let err = |line: usize, message: String| Error::Parse {
        path: "<csv>".into(),
        line,
        message,
    };
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    let approx = match cols.as_slice() {
        c if c == CSV_COLUMNS => false,
        [head @ .., "approx"] if head == CSV_COLUMNS => true,
        _ => return Err(err(1, format!("unexpected header {header:?}"))),
    };
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != cols.len() {
            return Err(err(i + 1, format!("expected {} fields", cols.len())));
        }
        let num = |s: &str| u64::from_str(s).map_err(|_| err(i + 1, format!("bad integer {s:?}")));
        let wrap = |e: Error| err(i + 1, e.to_string());
        out.push(ClassificationRecord {
            n: num(f[0])?,
            status: f[1].parse().map_err(wrap)?,
            r2: Fraction {
                num: num(f[2])?,
                den: num(f[3])?,
            },
            surd: SurdParts {
                s: num(f[4])?,
                d: num(f[5])?,
                q: num(f[6])?,
            },
            source: f[7].parse().map_err(wrap)?,
            impacting_index: match f[8] {
                "" => None,
                s => Some(ImpactingIndex::from_str(s).map_err(wrap)?.into()),
            },
            witness_boundary: None,
            approx: approx.then(|| f[9].to_string()),
        });
    }
    Ok(out)
}

/// One record per line inside a versioned envelope.
pub fn write_json(max_n: u64, records: &[ClassificationRecord]) -> Result<String> {
    let mut s = format!(
        "{{\n  \"schema_version\": {SCHEMA_VERSION},\n  \"max_n\": {max_n},\n  \"records\": [\n"
    );
    for (i, r) in records.iter().enumerate() {
        s.push_str("    ");
        s.push_str(&serde_json::to_string(r)?);
        s.push_str(if i + 1 < records.len() { ",\n" } else { "\n" });
    }
    s.push_str("  ]\n}\n");
    Ok(s)
}

pub fn parse_json(text: &str) -> Result<RecordSet> {
    let set: RecordSet = serde_json::from_str(text)?;
    if set.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidArgument(format!(
            "unsupported schema version {}",
            set.schema_version
        )));
    }
    Ok(set)
}
