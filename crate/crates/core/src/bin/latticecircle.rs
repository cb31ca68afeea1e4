use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use log::{error, info};

use latticecircle::classify::{build_rho_table, classify_table, RhoTable};
use latticecircle::io::bfile::{self, BFileSeries, KnownSequence};
use latticecircle::io::{cache, records};
use latticecircle::oracle::{self, OracleReport};
use latticecircle::special::{self, Family};
use latticecircle::symmetry::{symmetry_census, Bucket};
use latticecircle::{count_points, Circle, Error, Rational};

#[derive(Parser)]
#[command(
    name = "latticecircle",
    version,
    about = "Largest circles enclosing exactly n lattice points"
)]
struct Cli {
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    F,
    G,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every n <= max as MC or non-MC and print R_n.
    Classify {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Rho-table cache file, read if valid and written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Add a decimal R_n column.
        #[arg(long)]
        approx: bool,
    },
    /// Print the rho-table: largest lattice circle per interior count.
    Rho {
        #[arg(long)]
        max: u64,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Counts enclosed by the two parametric circle families.
    Special {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long)]
        max_k: u64,
    },
    /// Witness-based mirror symmetry census of the MC-circles.
    Symmetry {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Print per-bin totals instead of per-n rows.
        #[arg(long)]
        summary: bool,
    },
    /// Cross-checks against external data and reference implementations.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Count lattice points inside and on a circle.
    Count {
        #[arg(long, allow_hyphen_values = true)]
        cx: Rational,
        #[arg(long, allow_hyphen_values = true)]
        cy: Rational,
        #[arg(long)]
        r2: Rational,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Compare a counting sequence with an OEIS b-file.
    Oeis {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        bfile: PathBuf,
        #[arg(long)]
        upto: u64,
    },
    /// Run the reference implementations and the theorem checks.
    Oracle {
        /// Classification range for the theorem checks.
        #[arg(long, default_value_t = 40)]
        max: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Exit statuses: 0 success, 1 a check disagreed, 2 bad input.
enum Outcome {
    Ok,
    Mismatch,
}

fn rho_table(max: u64, cache_path: Option<&PathBuf>) -> anyhow::Result<RhoTable> {
    Ok(match cache_path {
        Some(p) => cache::load_or_build(p, max)?,
        None => build_rho_table(max)?,
    })
}

fn report(reports: &[OracleReport]) -> Outcome {
    let mut ok = true;
    for r in reports {
        if r.agreement {
            info!("{r}");
        } else {
            error!("{r}");
            eprintln!("{r}");
            ok = false;
        }
    }
    if ok {
        Outcome::Ok
    } else {
        Outcome::Mismatch
    }
}

fn run(cli: Cli, out: &mut String) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Classify {
            max,
            format,
            cache,
            approx,
        } => {
            let table = rho_table(max, cache.as_ref())?;
            let rows = classify_table(&table);
            let recs = records::to_records(&rows, approx)?;
            out.push_str(&match format {
                FormatArg::Csv => records::write_csv(&recs),
                FormatArg::Json => records::write_json(max, &recs)?,
            });
            Ok(report(&oracle::theorem_suite(&rows)))
        }
        Command::Rho { max, cache } => {
            let table = rho_table(max, cache.as_ref())?;
            out.push_str("n,rho2,cx,cy,boundary,multiplicity\n");
            for n in 0..=max {
                match table.get(n) {
                    Some(e) => writeln!(
                        out,
                        "{n},{},{},{},{},{}",
                        e.rho2,
                        e.witness.cx,
                        e.witness.cy,
                        e.boundary,
                        e.multiplicity()
                    )?,
                    None => writeln!(out, "{n},,,,,0")?,
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Special { family, max_k } => {
            if max_k == 0 {
                bail!(Error::InvalidArgument("--max-k must be at least 1".into()));
            }
            let family = match family {
                FamilyArg::F => Family::S,
                FamilyArg::G => Family::T,
            };
            out.push_str("k,count,r2,surd\n");
            for r in special::records(family, max_k)? {
                writeln!(out, "{},{},{},{}", r.k, r.count, r.r2, r.surd)?;
            }
            Ok(Outcome::Ok)
        }
        Command::Symmetry {
            max,
            format,
            cache,
            summary,
        } => {
            let table = rho_table(max, cache.as_ref())?;
            let rows = classify_table(&table);
            let census = symmetry_census(&rows, &table);
            match (format, summary) {
                (FormatArg::Json, _) => {
                    let doc = serde_json::json!({
                        "basis": "witness",
                        "bucket_precedence": Bucket::ALL.map(|b| b.name()),
                        "max_n": max,
                        "census": census,
                    });
                    out.push_str(&serde_json::to_string_pretty(&doc)?);
                    out.push('\n');
                }
                (FormatArg::Csv, false) => {
                    out.push_str("# witness-based\nn,strong,boundary_count,lattice_axes,geometric_axes,bucket\n");
                    for r in &census.reports {
                        let axes: Vec<String> =
                            r.lattice_axes.iter().map(|a| a.to_string()).collect();
                        writeln!(
                            out,
                            "{},{},{},{},{},{}",
                            r.n,
                            r.strong,
                            r.boundary_count,
                            axes.join(";"),
                            r.geometric_axes_count,
                            r.bucket
                        )?;
                    }
                }
                (FormatArg::Csv, true) => {
                    writeln!(
                        out,
                        "# witness-based; buckets by precedence: {}",
                        Bucket::ALL.map(|b| b.name()).join(" > ")
                    )?;
                    let names = Bucket::ALL.map(|b| b.name()).join(",");
                    writeln!(out, "bin,mc,strong,{names},lattice_symmetric,geometric_symmetric,slant,only_one_hv,two_plus")?;
                    let rows = census.bins.iter().map(|(b, c)| (b.to_string(), c));
                    for (label, c) in
                        rows.chain(std::iter::once(("total".to_string(), &census.totals)))
                    {
                        let buckets: Vec<String> = Bucket::ALL
                            .iter()
                            .map(|b| c.buckets.get(b).copied().unwrap_or(0).to_string())
                            .collect();
                        writeln!(
                            out,
                            "{label},{},{},{},{},{},{},{},{}",
                            c.mc,
                            c.strong,
                            buckets.join(","),
                            c.lattice_symmetric,
                            c.geometric_symmetric,
                            c.slant,
                            c.only_one_hv,
                            c.two_plus
                        )?;
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Verify {
            target:
                VerifyTarget::Oeis {
                    seq,
                    bfile: path,
                    upto,
                },
        } => {
            let known = KnownSequence::from_id(&seq)
                .ok_or_else(|| Error::InvalidArgument(format!("unsupported sequence {seq}")))?;
            let series = BFileSeries::read(&seq.to_ascii_uppercase(), &path)?;
            let r = bfile::verify(&series, known, upto)?;
            writeln!(out, "{r}")?;
            Ok(report(&[r]))
        }
        Command::Verify {
            target: VerifyTarget::Oracle { max, samples, seed },
        } => {
            let mut reports = Vec::new();
            for b2 in [Rational::half(), Rational::frac(5, 2), Rational::from(9)] {
                reports.push(oracle::check_enumeration(&b2)?);
            }
            reports.push(oracle::check_counts(&oracle::random_circles(seed, samples)));
            let rows = classify_table(&build_rho_table(max)?);
            reports.extend(oracle::theorem_suite(&rows));
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            Ok(report(&reports))
        }
        Command::Count { cx, cy, r2 } => {
            let c = Circle::new(cx, cy, r2).context("invalid circle")?;
            let pc = count_points(&c);
            writeln!(out, "interior {}\nboundary {}", pc.interior, pc.boundary)?;
            Ok(Outcome::Ok)
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("THREADS={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let mut out = String::new();
    let outcome = run(cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match outcome {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
