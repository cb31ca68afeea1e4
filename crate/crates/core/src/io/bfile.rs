//! OEIS b-file ingestion.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;

use crate::counting::{closed_count_n, closed_count_nu};
use crate::error::{Error, Result};
use crate::oracle::OracleReport;
use crate::Rational;

/// Terms of an OEIS sequence read from a b-file (`index value` per line).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFileSeries {
    pub sequence_id: String,
    pub terms: BTreeMap<u64, BigInt>,
}

impl BFileSeries {
    /// Parses b-file text. `origin` names the source in error messages.
    pub fn parse(sequence_id: &str, text: &str, origin: &str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        let mut last: Option<u64> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                path: origin.to_string(),
                line: i + 1,
                message,
            };
            let mut fields = line.split_whitespace();
            let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(err(format!("expected \"index value\", got {line:?}")));
            };
            let idx: u64 = idx.parse().map_err(|_| err(format!("bad index {idx:?}")))?;
            let val: BigInt = val.parse().map_err(|_| err(format!("bad value {val:?}")))?;
            if last.is_some_and(|l| idx <= l) {
                return Err(err(format!("index {idx} does not increase")));
            }
            last = Some(idx);
            terms.insert(idx, val);
        }
        Ok(BFileSeries {
            sequence_id: sequence_id.to_string(),
            terms,
        })
    }

    pub fn read(sequence_id: &str, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(sequence_id, &text, &path.display().to_string())
    }
}

/// Sequences this crate can compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownSequence {
    /// Points with `x^2 + y^2 <= k^2`.
    A000328,
    /// Points with `x^2 + y^2 < k^2`.
    A051132,
    /// Points with `x^2 + y^2 = k^2`.
    A046109,
}

impl KnownSequence {
    pub fn from_id(id: &str) -> Option<Self> {
        match id.to_ascii_uppercase().as_str() {
            "A000328" => Some(Self::A000328),
            "A051132" => Some(Self::A051132),
            "A046109" => Some(Self::A046109),
            _ => None,
        }
    }

    pub fn term(&self, k: u64) -> Result<u64> {
        let r2 = Rational::from((k * k) as i64);
        let n = || closed_count_n(&r2);
        let nu = || closed_count_nu(&r2);
        Ok(match self {
            Self::A000328 => n()?,
            Self::A051132 => nu()?,
            Self::A046109 => n()? - nu()?,
        })
    }
}

/// Compares computed terms with the b-file for indices `1..=upto`. Indices
/// missing from the file are skipped.
pub fn verify(series: &BFileSeries, seq: KnownSequence, upto: u64) -> Result<OracleReport> {
    let mut divergence = None;
    for (&k, expected) in series.terms.range(1..=upto) {
        let got = seq.term(k)?;
        if BigInt::from(got) != *expected {
            divergence = Some(format!("index {k}: computed {got}, file has {expected}"));
            break;
        }
    }
    Ok(OracleReport::new(
        format!("{} up to {upto}", series.sequence_id),
        divergence,
    ))
}
