//! On-disk cache of the rho-table.
//!
//! ```text
//! latticecirclecache v1 M=<max> b2=<num>/<den>
//! <cx> <cy> <r2> <interior> <boundary>
//! ...
//! sha256 <hex digest of all preceding bytes>
//! ```
//!
//! One line per witness circle, sorted by interior count then key.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use log::{info, warn};
use sha2::{Digest, Sha256};

use crate::arith::Rational;
use crate::classify::{build_rho_table, RhoEntry, RhoTable};
use crate::enumerate::CircleKey;
use crate::error::{Error, Result};

const MAGIC: &str = "latticecirclecache";
const VERSION: &str = "v1";

fn digest(body: &str) -> String {
    Sha256::digest(body.as_bytes())
        .iter()
        .fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

fn ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn encode(table: &RhoTable) -> String {
    let mut body = format!(
        "{MAGIC} {VERSION} M={} b2={}\n",
        table.max_n,
        ratio(&table.b2)
    );
    for (n, e) in &table.entries {
        for w in &e.witnesses {
            let _ = writeln!(
                body,
                "{} {} {} {n} {}",
                ratio(&w.cx),
                ratio(&w.cy),
                ratio(&w.r2),
                crate::counting::count_points(&w.circle()).boundary
            );
        }
    }
    let sum = digest(&body);
    body.push_str("sha256 ");
    body.push_str(&sum);
    body.push('\n');
    body
}

pub fn decode(text: &str) -> Result<RhoTable> {
    let bad = |m: String| Error::Cache(m);
    let Some((body, trailer)) = text.trim_end_matches('\n').rsplit_once('\n') else {
        return Err(bad("missing checksum trailer".into()));
    };
    let body = format!("{body}\n");
    let Some(sum) = trailer.strip_prefix("sha256 ") else {
        return Err(bad("missing checksum trailer".into()));
    };
    if sum != digest(&body) {
        return Err(bad("checksum mismatch".into()));
    }
    let mut lines = body.lines();
    let header = lines.next().unwrap_or_default();
    let fields: Vec<&str> = header.split(' ').collect();
    let (max_n, b2) = match fields.as_slice() {
        [MAGIC, VERSION, m, b] => {
            let m = m.strip_prefix("M=").and_then(|v| v.parse::<u64>().ok());
            let b = b
                .strip_prefix("b2=")
                .and_then(|v| v.parse::<Rational>().ok());
            m.zip(b)
                .ok_or_else(|| bad(format!("bad header {header:?}")))?
        }
        [MAGIC, v, ..] => return Err(bad(format!("unsupported version {v}"))),
        _ => return Err(bad(format!("bad header {header:?}"))),
    };
    let mut groups: BTreeMap<u64, Vec<(CircleKey, u64)>> = BTreeMap::new();
    for line in lines {
        let f: Vec<&str> = line.split(' ').collect();
        let parsed = (|| {
            let [cx, cy, r2, n, b] = f.as_slice() else {
                return None;
            };
            let key = CircleKey {
                cx: cx.parse().ok()?,
                cy: cy.parse().ok()?,
                r2: r2.parse().ok()?,
            };
            Some((n.parse::<u64>().ok()?, key, b.parse::<u64>().ok()?))
        })();
        let (n, key, boundary) = parsed.ok_or_else(|| bad(format!("bad record {line:?}")))?;
        if n > max_n {
            return Err(bad(format!("record for n={n} beyond M={max_n}")));
        }
        groups.entry(n).or_default().push((key, boundary));
    }
    let mut entries = BTreeMap::new();
    for (n, mut ws) in groups {
        ws.sort_by(|a, b| a.0.cmp(&b.0));
        let rho2 = ws[0].0.r2.clone();
        if ws.iter().any(|(k, _)| k.r2 != rho2) {
            return Err(bad(format!("witnesses for n={n} disagree on r2")));
        }
        let boundary = ws[0].1;
        let witnesses: Vec<CircleKey> = ws.into_iter().map(|(k, _)| k).collect();
        entries.insert(
            n,
            RhoEntry {
                rho2,
                witness: witnesses[0].clone(),
                witnesses,
                boundary,
            },
        );
    }
    Ok(RhoTable { max_n, b2, entries })
}

pub fn write(path: &Path, table: &RhoTable) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, encode(table))?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read(path: &Path) -> Result<RhoTable> {
    decode(&std::fs::read_to_string(path)?)
}

/// The rho-table for `m`, from the cache when it covers `m`. A missing,
/// corrupt or too small cache is rebuilt and rewritten.
pub fn load_or_build(path: &Path, m: u64) -> Result<RhoTable> {
    if path.exists() {
        match read(path) {
            Ok(t) if t.max_n >= m => {
                info!("using cache {} (M={})", path.display(), t.max_n);
                return Ok(t.truncated(m));
            }
            Ok(t) => info!(
                "cache {} covers M={} only, rebuilding",
                path.display(),
                t.max_n
            ),
            Err(e) => warn!("ignoring cache {}: {e}", path.display()),
        }
    }
    let table = build_rho_table(m)?;
    write(path, &table)?;
    Ok(table)
}
