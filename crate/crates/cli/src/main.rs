//! `magicfiber`: certified invariants, dilatations and minimal-dilatation
//! tables from the command line.

mod cache;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use magicfiber::fillings::{self, Family, FamilyClass, Filling};
use magicfiber::homology::{self, FiberedClass};
use magicfiber::polyroot::{pair_poly, teichmuller_poly, RootCache, Width};
use magicfiber::tables::{self, BoundSource, ClaimStatus, MinTableRow, Suite, VerifyConfig};
use magicfiber::Error;
use serde_json::{json, Value};

use render::*;

#[derive(Parser)]
#[command(name = "magicfiber", version, about = "Certified dilatations of fibered classes of the magic manifold and its fillings")]
struct Cli {
    /// Bracket width as a power of two, e.g. 2^-40.
    #[arg(long, global = true, default_value = "2^-40", value_parser = parse_width)]
    width: Width,

    /// Neither read nor write the root cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of the class xα + yβ + zγ.
    #[command(allow_negative_numbers = true)]
    Class { x: i64, y: i64, z: i64 },

    /// Invariants of k·u + l·v on the filling of family A, P or R.
    #[command(allow_negative_numbers = true)]
    Family {
        #[arg(value_parser = parse_family)]
        family: Family,
        k: i64,
        l: i64,
    },

    /// Minimal dilatation per genus over one filling.
    MinTable {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_filling)]
        fill: Filling,
        #[arg(long, default_value_t = 3)]
        genus_from: i64,
        /// Defaults to --genus-from.
        #[arg(long)]
        genus_to: Option<i64>,
        /// Restrict to monodromies with orientable invariant foliations.
        #[arg(long)]
        orientable: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },

    /// Upper bounds on the minimal dilatation of closed surfaces of each genus.
    Bounds {
        #[arg(long, default_value_t = 2)]
        genus_from: i64,
        #[arg(long)]
        genus_to: Option<i64>,
        #[arg(long)]
        orientable: bool,
    },

    /// Normalized entropy over the fibered face of a filling.
    EntFace {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_filling)]
        fill: Filling,
        /// Largest denominator k of the scanned points l/k.
        #[arg(long, default_value_t = 10)]
        max_denominator: i64,
    },

    /// Re-derive the published inequalities, equalities and tables.
    Verify {
        /// inequalities, equalities, congruences, smallgenus, monotone, asymptotic or all.
        #[arg(long, default_value = "all", value_parser = parse_suites)]
        suite: SuiteList,
        #[arg(long, default_value_t = 3)]
        genus_from: i64,
        #[arg(long, default_value_t = 50)]
        genus_to: i64,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Json)]
        format: VerifyFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Json,
    Text,
}

fn parse_width(s: &str) -> Result<Width, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_filling(s: &str) -> Result<Filling, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone)]
struct SuiteList(Vec<Suite>);

fn parse_suites(s: &str) -> Result<SuiteList, String> {
    Suite::parse_list(s).map(SuiteList).map_err(|e| e.to_string())
}

/// Exit status for a library error: 2 for bad input, 1 otherwise.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ConeViolation { .. }
        | Error::NotPrimitive { .. }
        | Error::InconsistentGenus { .. }
        | Error::FamilyRange { .. }
        | Error::UnknownSuite(_)
        | Error::InvalidWidth(_)
        | Error::InvalidArgument(_) => 2,
        Error::NoRootAboveOne(_) | Error::PrecisionExhausted { .. } | Error::Undecidable { .. } => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_path = if cli.no_cache { None } else { cache::default_path() };
    let cache = cache_path.as_deref().map(cache::load).unwrap_or_default();

    let outcome = run(&cli, &cache);

    if let Some(path) = &cache_path {
        if let Err(e) = cache::save(&cache, path) {
            eprintln!("warning: could not write root cache: {e:#}");
        }
    }
    match outcome {
        Ok(Output { text, success }) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

struct Output {
    text: String,
    success: bool,
}

impl Output {
    fn json(v: Value) -> Self {
        let mut text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
        text.push('\n');
        Output { text, success: true }
    }
}

fn echo() -> Value {
    json!(std::env::args().skip(1).collect::<Vec<_>>())
}

fn genus_range(from: i64, to: Option<i64>) -> magicfiber::Result<std::ops::RangeInclusive<i64>> {
    let to = to.unwrap_or(from);
    if from < 2 || to < from {
        return Err(Error::InvalidArgument(format!(
            "genus range {from}..={to} must satisfy 2 <= from <= to"
        )));
    }
    Ok(from..=to)
}

fn run(cli: &Cli, cache: &RootCache) -> magicfiber::Result<Output> {
    let width = cli.width;
    match &cli.command {
        Command::Class { x, y, z } => class_report(cache, *x, *y, *z, width),
        Command::Family { family, k, l } => family_report(cache, *family, *k, *l, width),
        Command::MinTable {
            fill,
            genus_from,
            genus_to,
            orientable,
            format,
        } => {
            let rows = genus_range(*genus_from, *genus_to)?
                .map(|g| tables::min_lambda(cache, *fill, g, *orientable, width))
                .collect::<magicfiber::Result<Vec<_>>>()?;
            match format {
                TableFormat::Json => Ok(Output::json(json!({
                    "command": echo(),
                    "input": {
                        "fill": fill.to_string(),
                        "genus_from": genus_from,
                        "genus_to": genus_to.unwrap_or(*genus_from),
                        "orientable_only": orientable,
                        "width": width.to_string(),
                    },
                    "rows": rows.iter().map(|r| row_json(r, width)).collect::<Vec<_>>(),
                    "provenance": [
                        "candidates: k in {g, g+1, g+2}, 0 < l < k, gcd(k, l) = 1, closed genus g, no 1-prong",
                        "minimum by certified comparison of largest roots of f_(k,l)",
                    ],
                }))),
                TableFormat::Csv => Ok(Output {
                    text: rows_csv(&rows, width),
                    success: true,
                }),
            }
        }
        Command::Bounds {
            genus_from,
            genus_to,
            orientable,
        } => {
            let bounds = genus_range(*genus_from, *genus_to)?
                .map(|g| tables::delta_upper_bound(cache, g, *orientable, width))
                .collect::<magicfiber::Result<Vec<_>>>()?;
            let rows: Vec<Value> = bounds
                .iter()
                .map(|b| {
                    json!({
                        "g": b.genus,
                        "orientable_only": b.orientable_only,
                        "bound": b.interval.as_ref().map(|r| root_json(r, width)),
                        "sources": b.sources.iter().map(source_json).collect::<Vec<_>>(),
                        "fillings": b.rows.iter().map(|r| row_json(r, width)).collect::<Vec<_>>(),
                        "magic_classes": b.specials.iter().map(|(c, r)| json!({
                            "class": class_json(c),
                            "lambda": root_json(r, width),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Output::json(json!({
                "command": echo(),
                "input": {
                    "genus_from": genus_from,
                    "genus_to": genus_to.unwrap_or(*genus_from),
                    "orientable_only": orientable,
                    "width": width.to_string(),
                },
                "rows": rows,
                "provenance": [
                    "bound: minimum over the fillings -3/2, -1/2 and 2, and the magic-manifold classes (18, 17, 7) at genus 8 and (27, 21, 8) at genus 13",
                ],
            })))
        }
        Command::EntFace { fill, max_denominator } => {
            let scan = tables::ent_face_scan(cache, *fill, *max_denominator)?;
            let digits = digits_for(scan.bits);
            let point = |p: &tables::EntFacePoint| {
                json!({
                    "s": p.parameter().to_string(),
                    "k": p.k,
                    "l": p.l,
                    "ent": dyadic_interval_json(&p.ent, digits),
                })
            };
            let limit = tables::golden_log(cache, scan.bits)?.scale_int(2);
            Ok(Output::json(json!({
                "command": echo(),
                "input": {
                    "fill": fill.to_string(),
                    "max_denominator": max_denominator,
                },
                "points": scan.points.iter().map(point).collect::<Vec<_>>(),
                "minimum": scan.minimum.map(|i| point(&scan.points[i])),
                "face_minimum_value": dyadic_interval_json(&limit, digits),
                "provenance": [
                    "Ent(l/k) = 2 max(k, |l|) log lambda_(k,|l|)",
                    "face minimum 2 log((3 + sqrt 5)/2) at s = 0",
                ],
            })))
        }
        Command::Verify {
            suite,
            genus_from,
            genus_to,
            format,
        } => {
            if genus_to < genus_from || *genus_from < 2 {
                return Err(Error::InvalidArgument(format!(
                    "genus range {genus_from}..={genus_to} must satisfy 2 <= from <= to"
                )));
            }
            let config = VerifyConfig {
                genus_from: *genus_from,
                genus_to: *genus_to,
                width,
                ..VerifyConfig::default()
            };
            let report = tables::verify_claims(cache, &suite.0, &config)?;
            for item in &report.items {
                if matches!(item.status, ClaimStatus::Flag | ClaimStatus::Fail) {
                    eprintln!("{} {}: {}: {}", item.status, item.suite, item.id, item.detail);
                }
            }
            for (suite, seconds) in &report.seconds {
                eprintln!("suite {suite}: {seconds:.3} s");
            }
            let success = !report.has_failures();
            let mut out = match format {
                VerifyFormat::Json => Output::json(json!({
                    "command": echo(),
                    "input": {
                        "suites": suite.0.iter().map(|s| s.name()).collect::<Vec<_>>(),
                        "genus_from": genus_from,
                        "genus_to": genus_to,
                    },
                    "items": report.items.iter().map(|i| json!({
                        "suite": i.suite.name(),
                        "id": i.id,
                        "status": i.status.to_string(),
                        "detail": i.detail,
                    })).collect::<Vec<_>>(),
                    "summary": {
                        "pass": report.count(ClaimStatus::Pass),
                        "fail": report.count(ClaimStatus::Fail),
                        "flag": report.count(ClaimStatus::Flag),
                        "note": report.count(ClaimStatus::Note),
                    },
                })),
                VerifyFormat::Text => {
                    let mut text = String::new();
                    for i in &report.items {
                        text.push_str(&format!("[{}] {}: {}: {}\n", i.status, i.suite, i.id, i.detail));
                    }
                    text.push_str(&format!(
                        "{} passed, {} failed, {} flagged, {} notes\n",
                        report.count(ClaimStatus::Pass),
                        report.count(ClaimStatus::Fail),
                        report.count(ClaimStatus::Flag),
                        report.count(ClaimStatus::Note),
                    ));
                    Output { text, success: true }
                }
            };
            out.success = success;
            Ok(out)
        }
    }
}

fn class_report(cache: &RootCache, x: i64, y: i64, z: i64, width: Width) -> magicfiber::Result<Output> {
    let c = FiberedClass::new(x, y, z)?;
    let fiber = homology::fiber_type(&c)?;
    let (sa, sb, sg) = homology::boundary_slopes(&c);
    let p = teichmuller_poly(x, y, z)?;
    let lambda = cache.interval(&p, width)?;
    Ok(Output::json(json!({
        "command": echo(),
        "input": class_json(&c),
        "result": {
            "thurston_norm": homology::thurston_norm(&c),
            "fiber": fiber_json(&fiber),
            "boundary_slopes": { "alpha": slope_json(&sa), "beta": slope_json(&sb), "gamma": slope_json(&sg) },
            "singularities": singularities_json(&homology::singularity_data(&c)),
            "orientable": homology::orientable(&c),
            "orientability_identity": homology::orientability_identity_check(&c),
            "polynomial": p.to_string(),
            "dilatation": root_json(&lambda, width),
        },
        "provenance": [
            "norm x + y - z on the cone x > 0, y > 0, x > z, y > z",
            "boundary components gcd(x, y+z), gcd(y, z+x), gcd(z, x+y); genus from 2 - 2g - b = -norm",
            "prongs x/b_alpha, y/b_beta, (x+y-2z)/b_gamma on the boundary tori",
            "orientable iff x, y even and z odd",
            "dilatation: largest root of t^(x+y-z) - t^x - t^y - t^(x-z) - t^(y-z) + 1",
        ],
    })))
}

fn family_report(cache: &RootCache, family: Family, k: i64, l: i64, width: Width) -> magicfiber::Result<Output> {
    let fc = FamilyClass::new(family, k, l)?;
    let c = fc.to_fibered_class();
    let verdict = fillings::hyperbolicity(&fc);
    let p = pair_poly(k, l)?;
    let lambda = cache.interval(&p, width)?;
    let slopes: Vec<Value> = fillings::filled_slopes(&fc)
        .iter()
        .map(|(t, s)| json!({ "torus": t.name(), "slope": slope_json(s) }))
        .collect();
    Ok(Output::json(json!({
        "command": echo(),
        "input": family_class_json(&fc),
        "result": {
            "filling": family.filling().to_string(),
            "class": class_json(&c),
            "closed_genus": fillings::closed_genus(&fc),
            "two_cusped_fiber": fiber_json(&fillings::one_cusp_filled_fiber(&fc)),
            "capped_singularities": singularities_json(&fillings::capped_singularity_data(&fc)),
            "one_prong": fillings::has_one_prong(&fc),
            "orientable": fillings::capped_orientable(&fc),
            "filled_slopes": slopes,
            "hyperbolicity": {
                "status": verdict.status.to_string(),
                "witness": verdict.witness.map(|w| w.to_string()),
            },
            "polynomial": p.to_string(),
            "fiber_polynomial": teichmuller_poly(c.x(), c.y(), c.z())?.to_string(),
            "dilatation": root_json(&lambda, width),
        },
        "provenance": [
            "class coordinates A: (2k+l, 2k+2l, k+2l); P: (k, 2k+2l, l); R: (k+l, k-l, -k)",
            "closed genus A: k-2 if 5 | 2k+l or 5 | k+2l; P: k-1 if 3 | k or 3 | l; R: k; else k",
            "1-prong classes A(2,1), A(3,1), A(4,3), P(1,0), P(3,1), P(3,2), R with k+l = 1 or k-l = 1",
            "hyperbolicity: exceptional slopes and pairs, then the family classification lists",
            "dilatation: largest root of t^(2k) - t^(k+l) - t^k - t^(k-l) + 1",
        ],
    })))
}

fn row_json(r: &MinTableRow, width: Width) -> Value {
    json!({
        "g": r.genus,
        "fill": r.filling.to_string(),
        "orientable_only": r.orientable_only,
        "argmins": r.argmins.iter().map(family_class_json).collect::<Vec<_>>(),
        "lambda": r.interval.as_ref().map(|i| root_json(i, width)),
        "candidates_examined": r.candidates_examined,
    })
}

fn source_json(s: &BoundSource) -> Value {
    match s {
        BoundSource::Filling { filling, argmins } => json!({
            "kind": "filling",
            "fill": filling.to_string(),
            "argmins": argmins.iter().map(family_class_json).collect::<Vec<_>>(),
        }),
        BoundSource::MagicClass(c) => json!({ "kind": "magic", "class": class_json(c) }),
    }
}

fn rows_csv(rows: &[MinTableRow], width: Width) -> String {
    let digits = digits_for(width.bits());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "g",
        "fill",
        "family",
        "k",
        "l",
        "lambda_lo",
        "lambda_hi",
        "orientable",
        "candidates_examined",
    ])
    .expect("in-memory CSV");
    for r in rows {
        let (lo, hi) = r
            .interval
            .as_ref()
            .map(|i| i.to_decimal(digits))
            .unwrap_or_default();
        let g = r.genus.to_string();
        let fill = r.filling.to_string();
        let n = r.candidates_examined.to_string();
        if r.argmins.is_empty() {
            w.write_record([g.as_str(), &fill, "", "", "", "", "", "", &n])
                .expect("in-memory CSV");
        }
        for fc in &r.argmins {
            w.write_record([
                g.as_str(),
                &fill,
                &fc.family().to_string(),
                &fc.k().to_string(),
                &fc.l().to_string(),
                &lo,
                &hi,
                &fillings::capped_orientable(fc).to_string(),
                &n,
            ])
            .expect("in-memory CSV");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8")
}
