//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Instant;

use latticecircle::classify::{build_rho_table, classify_table, Classification, Status};
use latticecircle::counting::{closed_count_n, closed_count_nu, gauss_error};
use latticecircle::enumerate::{boundary_points, LatticePoint};
use latticecircle::io::bfile::BFileSeries;
use latticecircle::oracle::{check_counts, check_enumeration, random_circles, theorem_suite};
use latticecircle::special::{f_closed, g_count, g_equals_n};
use latticecircle::symmetry::{congruent_under_lattice, lattice_axes, symmetry_census};
use latticecircle::{Rational, SurdRadius};

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            notes: Vec::new(),
        }
    }
}

fn surd(s: u32, d: u32, q: u32) -> SurdRadius {
    SurdRadius {
        s: s.into(),
        d: d.into(),
        q: q.into(),
    }
}

fn rows_for(m: u64) -> Vec<Classification> {
    classify_table(&build_rho_table(m).expect("rho table"))
}

/// Expected `R_n` for `0 <= n <= 40`; non-MC rows name the MC number they inherit from.
enum Expected {
    Mc(SurdRadius),
    NonMc(u64),
}

fn reference_radii() -> BTreeMap<u64, Expected> {
    use Expected::*;
    let mut t = BTreeMap::new();
    let mc = [
        (0, surd(1, 2, 2)),
        (1, surd(1, 1, 1)),
        (2, surd(1, 5, 2)),
        (3, surd(5, 2, 6)),
        (4, surd(1, 10, 2)),
        (7, surd(5, 1, 3)),
        (8, surd(1, 13, 2)),
        (9, surd(2, 1, 1)),
        (10, surd(1, 65, 4)),
        (11, surd(1, 442, 10)),
        (12, surd(17, 1, 8)),
        (13, surd(1, 5, 1)),
        (14, surd(1, 85, 4)),
        (15, surd(5, 2, 3)),
        (16, surd(1, 26, 2)),
        (19, surd(5, 17, 8)),
        (20, surd(1, 65, 3)),
        (21, surd(2, 2, 1)),
        (22, surd(1, 290, 6)),
        (23, surd(29, 1, 10)),
        (24, surd(1, 221, 5)),
        (25, surd(3, 1, 1)),
        (26, surd(1, 37, 2)),
        // sqrt(37)/2 is the n=26 value; the best n=27 circle has 5 sqrt(74)/14.
        (27, surd(5, 74, 14)),
        (28, surd(1, 85, 3)),
        (29, surd(17, 74, 46)),
        (30, surd(41, 2, 18)),
        // 5 sqrt(2)/2 is the n=32 value; the best n=31 circle has sqrt(170)/4.
        (31, surd(1, 170, 4)),
        (32, surd(5, 2, 2)),
        (37, surd(1, 13, 1)),
        (39, surd(5, 34, 8)),
        (40, surd(1, 481, 6)),
    ];
    for (n, s) in mc {
        t.insert(n, Mc(s));
    }
    for (range, k) in [(5..=6, 4), (17..=18, 16), (33..=36, 32), (38..=38, 37)] {
        for n in range {
            t.insert(n, NonMc(k));
        }
    }
    t
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rows = rows_for(40);
    let expected = reference_radii();
    let mut mismatches = Vec::new();
    for r in &rows {
        let want = match &expected[&r.n] {
            Expected::Mc(s) => (Status::Mc, s.clone(), None),
            Expected::NonMc(k) => match &expected[k] {
                Expected::Mc(s) => (Status::NonMc, s.clone(), Some(*k)),
                Expected::NonMc(_) => unreachable!(),
            },
        };
        let source_ok = match want.2 {
            None => r.source == latticecircle::classify::Source::Own,
            Some(k) => r.source == latticecircle::classify::Source::Inherited(k),
        };
        if r.status != want.0 || r.surd != want.1 || r.r2 != want.1.square() || !source_ok {
            mismatches.push(format!(
                "n={}: computed {} {} (r2 {}, {}), expected {} {} (r2 {})",
                r.n,
                r.status,
                r.surd,
                r.r2,
                r.source,
                want.0,
                want.1,
                want.1.square()
            ));
        }
    }
    let elapsed = start.elapsed();
    let matched = rows.len() - mismatches.len();
    let mut out = Outcome::new(
        mismatches.is_empty() && elapsed.as_secs() < 60,
        format!("{matched}/{} rows exact, {:.2?}", rows.len(), elapsed),
    );
    out.notes = mismatches;
    if let Some(w) = rows[28].witness.as_ref() {
        let pts: Vec<String> = boundary_points(&w.circle())
            .iter()
            .map(|p| p.to_string())
            .collect();
        out.notes.push(format!(
            "n=28 witness: center ({}, {}), r2 {}, boundary {}, encloses {} points",
            w.cx,
            w.cy,
            w.r2,
            pts.join(" "),
            latticecircle::oracle::naive_count(&w.circle()).interior
        ));
    }
    out
}

fn expand(ranges: &[(u64, u64)]) -> BTreeSet<u64> {
    ranges.iter().flat_map(|&(a, b)| a..=b).collect()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let rows = rows_for(100);
    let mc_expected = expand(&[
        (0, 4),
        (7, 16),
        (19, 32),
        (37, 37),
        (39, 49),
        (51, 52),
        (55, 62),
        (64, 69),
        (74, 88),
        (91, 96),
        (99, 100),
    ]);
    let non_expected = expand(&[
        (5, 6),
        (17, 18),
        (33, 36),
        (38, 38),
        (50, 50),
        (53, 54),
        (63, 63),
        (70, 73),
        (89, 90),
        (97, 98),
    ]);
    let mc: BTreeSet<u64> = rows.iter().filter(|r| r.is_mc()).map(|r| r.n).collect();
    let non: BTreeSet<u64> = rows.iter().filter(|r| !r.is_mc()).map(|r| r.n).collect();
    let pass = mc == mc_expected && non == non_expected;
    let mut out = Outcome::new(
        pass,
        format!(
            "{} MC, {} non-MC, {:.2?}",
            mc.len(),
            non.len(),
            start.elapsed()
        ),
    );
    if !pass {
        out.notes.push(format!(
            "MC difference: {:?}",
            mc.symmetric_difference(&mc_expected).collect::<Vec<_>>()
        ));
    }
    out
}

fn criterion_3() -> Outcome {
    let f_table = [
        4, 16, 32, 60, 88, 124, 172, 216, 276, 332, 408, 484, 560, 648, 740, 848, 952, 1060, 1184,
        1304,
    ];
    let g_table = [
        5, 13, 29, 49, 81, 113, 149, 197, 253, 317, 377, 441, 529, 613, 709, 797, 901, 1009, 1129,
        1257,
    ];
    let mut notes = Vec::new();
    for k in 1..=20u64 {
        let f = f_closed(k).unwrap();
        let g = g_count(k).unwrap();
        if f != f_table[k as usize - 1] {
            notes.push(format!("f({k}) = {f}, table {}", f_table[k as usize - 1]));
        }
        if g != g_table[k as usize - 1] {
            notes.push(format!("g({k}) = {g}, table {}", g_table[k as usize - 1]));
        }
    }
    let gn = g_equals_n(100).unwrap();
    if let Some((k, g, n)) = gn.first_failure {
        notes.push(format!("g({k}) = {g} but N(k) = {n}"));
    }
    let mut out = Outcome::new(notes.is_empty(), "f, g for k <= 20; g = N for k <= 100");
    out.notes = notes;
    out
}

fn criterion_4() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let load = |id: &str, file: &str| BFileSeries::read(id, &dir.join(file)).expect("b-file");
    let a000328 = load("A000328", "b000328.txt");
    let a051132 = load("A051132", "b051132.txt");
    let a046109 = load("A046109", "b046109.txt");
    let mut notes = Vec::new();
    for k in 1..=100u64 {
        let r2 = Rational::from((k * k) as i64);
        let n = closed_count_n(&r2).unwrap();
        let nu = closed_count_nu(&r2).unwrap();
        for (series, got) in [(&a000328, n), (&a051132, nu), (&a046109, n - nu)] {
            if series.terms.get(&k) != Some(&got.into()) {
                notes.push(format!(
                    "{} at k={k}: computed {got}, file {:?}",
                    series.sequence_id,
                    series.terms.get(&k)
                ));
            }
        }
    }
    let mut out = Outcome::new(
        notes.is_empty(),
        "A000328, A051132, A046109 for 1 <= k <= 100",
    );
    out.notes = notes;
    out
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for r in 1..=100i64 {
        let g = gauss_error(&Rational::from(r)).unwrap();
        let bound = 2.0 * 2f64.sqrt() * std::f64::consts::PI * r as f64;
        worst = worst.max(g.error.abs() / bound);
        if !g.within_bound {
            notes.push(format!("r={r}: |N - pi r^2| = {}", g.error.abs()));
        }
    }
    let mut out = Outcome::new(
        notes.is_empty(),
        format!("r = 1..100, max |error| / bound = {worst:.4}"),
    );
    out.notes = notes;
    out
}

fn criterion_6(runs: &[(u64, &[Classification])]) -> Outcome {
    let mut notes = Vec::new();
    let mut count = 0;
    for (m, rows) in runs {
        for r in theorem_suite(rows) {
            count += 1;
            if !r.agreement {
                notes.push(format!("M={m}: {r}"));
            }
        }
    }
    let ms: Vec<String> = runs.iter().map(|(m, _)| m.to_string()).collect();
    let mut out = Outcome::new(
        notes.is_empty(),
        format!("{count} reports over M = {}", ms.join(", ")),
    );
    out.notes = notes;
    out
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    let t6 = build_rho_table(6).unwrap();
    if t6.get(6).is_some() {
        notes.push("rho_6 present".into());
    }
    match t6.get(5) {
        Some(e) if e.rho2 < Rational::frac(5, 2) => {}
        other => notes.push(format!("rho_5^2 = {:?}", other.map(|e| e.rho2.to_string()))),
    }
    let t130 = build_rho_table(130).unwrap();
    let rows = classify_table(&t130);
    let dips = t130.dips();
    let non_mc_dips: Vec<u64> = dips
        .iter()
        .copied()
        .filter(|&n| !rows[n as usize].is_mc() && !rows[n as usize - 1].is_mc())
        .collect();
    if !dips.contains(&129) {
        notes.push(format!("129 not among dips {dips:?}"));
    }
    if rows[128].is_mc() || rows[129].is_mc() {
        notes.push("128 or 129 classified MC".into());
    }
    if non_mc_dips != [129] {
        notes.push(format!("dips between two non-MC numbers: {non_mc_dips:?}"));
    }
    let mut out = Outcome::new(
        notes.is_empty(),
        format!(
            "absent at M=6: {:?}; dips at M=130 inside non-MC runs: {non_mc_dips:?}",
            t6.absent()
        ),
    );
    out.notes = notes;
    out
}

fn criterion_8() -> Outcome {
    let table = build_rho_table(70).unwrap();
    let mut notes = Vec::new();
    let w18 = table.get(18).expect("rho_18").witness.circle();
    let pts18 = boundary_points(&w18);
    let expected: BTreeSet<LatticePoint> =
        [(0, 3), (1, -1), (-3, 2)].map(LatticePoint::from).into();
    if !congruent_under_lattice(&pts18, &expected) {
        notes.push(format!("n=18 boundary {pts18:?}"));
    }
    if !lattice_axes(&w18).is_empty() {
        notes.push("n=18 has a lattice-invariant axis".into());
    }
    let w66 = table.get(66).expect("rho_66").witness.circle();
    let pts66 = boundary_points(&w66);
    if pts66.len() != 4 || !lattice_axes(&w66).is_empty() {
        notes.push(format!(
            "n=66: {} boundary points, {} lattice axes",
            pts66.len(),
            lattice_axes(&w66).len()
        ));
    }
    let mut out = Outcome::new(
        notes.is_empty(),
        format!(
            "n=18: {} points, n=66: {} points, neither with a lattice-invariant axis",
            pts18.len(),
            pts66.len()
        ),
    );
    out.notes = notes;
    out
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for b2 in [Rational::half(), Rational::frac(5, 2), Rational::from(9)] {
        let r = check_enumeration(&b2).unwrap();
        if !r.agreement {
            notes.push(r.to_string());
        }
    }
    let r = check_counts(&random_circles(2024, 500));
    if !r.agreement {
        notes.push(r.to_string());
    }
    let elapsed = start.elapsed();
    let mut out = Outcome::new(
        notes.is_empty() && elapsed.as_secs() < 60,
        format!("enumeration at b2 = 1/2, 5/2, 9 and 500 random counts, {elapsed:.2?}"),
    );
    out.notes = notes;
    out
}

fn criterion_10(rows442: &[Classification]) -> Outcome {
    let non: Vec<u64> = (410..=441)
        .filter(|&n| !rows442[n as usize].is_mc())
        .collect();
    let mut out = Outcome::new(non.is_empty(), "M=442: 410..=441 all MC");
    if !non.is_empty() {
        out.notes.push(format!("non-MC in range: {non:?}"));
    }
    out
}

/// Comparison with the full-range statistics, reported but not graded.
fn full_range_notes(rows: &[Classification]) -> Vec<String> {
    let table = build_rho_table(1099).unwrap();
    let bins = |pred: &dyn Fn(&Classification) -> bool| -> Vec<u64> {
        (0..11)
            .map(|b| {
                rows[b * 100..(b * 100 + 100).min(rows.len())]
                    .iter()
                    .filter(|r| pred(r))
                    .count() as u64
            })
            .collect()
    };
    let mc = bins(&|r| r.is_mc());
    let strong = bins(&|r| r.strong());
    let census = symmetry_census(rows, &table);
    let t = &census.totals;
    let largest_g: Vec<u64> = (1..)
        .map(|k| (k, g_count(k).unwrap()))
        .take_while(|&(_, g)| g < rows.len() as u64)
        .filter(|&(k, g)| rows[g as usize].r2 == Rational::from((k * k + 1) as i64))
        .map(|(_, g)| g)
        .collect();
    vec![
        format!("n < 1100: {} MC, MC per 100: {mc:?}", mc.iter().sum::<u64>()),
        format!("strong per 100: {strong:?} (total {})", strong.iter().sum::<u64>()),
        format!(
            "witness census: lattice-symmetric {}, geometric-symmetric {}, slant {}, only one h/v {}, two or more {}",
            t.lattice_symmetric, t.geometric_symmetric, t.slant, t.only_one_hv, t.two_plus
        ),
        format!(
            "buckets: {}",
            t.buckets.iter().map(|(b, c)| format!("{b}={c}")).collect::<Vec<_>>().join(", ")
        ),
        format!("g(k) < 1100 whose circle is largest: {largest_g:?}"),
    ]
}

fn main() {
    // Other libtest flags such as --nocapture are ignored.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let rows40 = rows_for(40);
    let rows100 = rows_for(100);
    let rows442 = rows_for(442);
    let rows1099 = rows_for(1099);

    let results = vec![
        (1, "reference radii for n <= 40", criterion_1()),
        (2, "n <= 100 classification", criterion_2()),
        (3, "special classes", criterion_3()),
        (4, "counting formulas vs OEIS", criterion_4()),
        (5, "Gauss bound", criterion_5()),
        (
            6,
            "theorem property suite",
            criterion_6(&[
                (40, &rows40),
                (100, &rows100),
                (442, &rows442),
                (1099, &rows1099),
            ]),
        ),
        (7, "rho-table facts", criterion_7()),
        (8, "symmetry spot checks", criterion_8()),
        (9, "oracle gates", criterion_9()),
        (10, "stretch: M = 442", criterion_10(&rows442)),
    ];

    let mut failed = 0;
    for (id, name, out) in &results {
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag}: {name} ({})", out.detail);
        for n in &out.notes {
            println!("             {n}");
        }
        failed += !out.pass as usize;
    }
    println!("info: full-range statistics (not graded)");
    for n in full_range_notes(&rows1099) {
        println!("             {n}");
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
