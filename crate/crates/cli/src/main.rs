//! Command-line front end: dataset ingestion, depth queries,
//! constructions, searches, generators, the bounds table and SVG figures.

mod csv;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use regdepth::bounds::{BoundsTable, Quantity};
use regdepth::constructions::{
    catline, centerpoint, construct_deep_line_3d, construct_deep_plane_3d, ham_sandwich_2d,
    ham_sandwich_3d_seeded, six_sector_partition, DeepLineStrategy,
};
use regdepth::datagen::{generate, GeneratorKind, GeneratorSpec};
use regdepth::deepest::{approx_deepest, deepest_flat_heuristic_3d, deepest_line_2d, ApproxParams};
use regdepth::depth::{crossing_distance, regression_depth, tukey_depth};
use regdepth::geometry::{Flat, Point, Vector};
use regdepth::scalar::parse_scalar;
use regdepth::tverberg::{
    tverberg_partition_2d, verify_flat_tverberg, PartitionFamily, PartitionKind,
};
use regdepth::{Error, Scalar};

use crate::csv::{digest, emit_dataset, parse_dataset, Dataset};
use crate::report::{
    certificate_value, flat_value, hyperplane_value, params, point_value, Report, SCHEMA_VERSION,
};

/// Default-seed environment variable.
const SEED_ENV: &str = "REGDEPTH_SEED";

#[derive(Parser)]
#[command(name = "regdepth", about = "Exact regression depth of points, lines and planes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the report (or SVG/CSV) here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized searches; falls back to $REGDEPTH_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Median,
    ThreePiece,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Overlay {
    None,
    Catline,
    Sixsector,
    DeepestLine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Regression depth of a k-flat with respect to a dataset.
    Depth {
        #[arg(long)]
        input: PathBuf,
        /// Independent-variable count; defaults to the file's `# k=` pragma.
        #[arg(long)]
        k: Option<usize>,
        /// Flat as "anchor;span[;span]" with rational components.
        #[arg(long)]
        flat: String,
    },
    /// Location (halfspace) depth of a point.
    Tukey {
        #[arg(long)]
        input: PathBuf,
        /// The query point as "x,y" or "x,y,z".
        #[arg(long)]
        point: String,
    },
    /// Crossing distance between two flats (repeat --flat).
    CrossingDistance {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, action = clap::ArgAction::Append)]
        flat: Vec<String>,
    },
    /// The catline: a planar line of depth at least ceil(n/3).
    Catline {
        #[arg(long)]
        input: PathBuf,
    },
    /// A point of location depth at least ceil(n/(d+1)).
    Centerpoint {
        #[arg(long)]
        input: PathBuf,
    },
    /// Planar ham sandwich cut of two datasets.
    Hamsandwich2d {
        #[arg(long, action = clap::ArgAction::Append)]
        input: Vec<PathBuf>,
    },
    /// Spatial ham sandwich cut of three datasets.
    Hamsandwich3d {
        #[arg(long, action = clap::ArgAction::Append)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Three concurrent lines cutting the plane into near-equal sixths.
    Sixsector {
        #[arg(long)]
        input: PathBuf,
    },
    /// A 3D line of guaranteed regression depth.
    DeepLine3d {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Median)]
        strategy: Strategy,
    },
    /// A 3D plane of guaranteed regression depth.
    DeepPlane3d {
        #[arg(long)]
        input: PathBuf,
    },
    /// The exact deepest regression line in the plane.
    DeepestLine2d {
        #[arg(long)]
        input: PathBuf,
    },
    /// Certified heuristic search for a deep 3D flat.
    Heuristic3d {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Sampling-based approximate deepest flat.
    ApproxDeepest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Failure budget delta as a rational in (0,1), e.g. 1/4.
        #[arg(long)]
        delta: String,
        /// Optional explicit sample size (capped at n).
        #[arg(long)]
        sample_size: Option<usize>,
    },
    /// Planar Tverberg partition around a centerpoint.
    Tverberg2d {
        #[arg(long)]
        input: PathBuf,
    },
    /// Depth of a flat within each part of a partition.
    VerifyTverberg {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        flat: String,
        /// Parts as semicolon-separated index lists: "0,1,2;3,4,5".
        #[arg(long)]
        parts: String,
    },
    /// Write a generated dataset as CSV.
    Generate {
        /// uniform-box | circle-equispaced | sphere-projection | clusters
        /// | collinear | planted-flat | r31-lower-bound
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 3)]
        clusters: usize,
        #[arg(long, default_value_t = 20_000)]
        spread: i64,
        #[arg(long, default_value_t = false)]
        distinct_x: bool,
    },
    /// Print the table of known depth constants.
    Bounds {
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Render a dataset (with an optional construction overlay) as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Overlay::None)]
        overlay: Overlay,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli
        .seed
        .or_else(|| std::env::var(SEED_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(0);
    match run(cli.cmd, seed, cli.output.as_deref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::InvalidSpec(_) | Error::VerticalDual => 2,
        Error::DimensionMismatch { .. } | Error::UnsupportedFlatPair(_) | Error::InvalidFlat(_) => {
            3
        }
        Error::VerificationFailed { .. }
        | Error::SearchBudgetExhausted { .. }
        | Error::OverlappingParts { .. } => 4,
    }
}

fn read_dataset(path: &std::path::Path) -> Result<(Dataset, String), Error> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::InvalidInput(format!("{} is not UTF-8", path.display())))?;
    Ok((parse_dataset(&text)?, digest(&bytes)))
}

fn parse_point(text: &str) -> Result<Point, Error> {
    let coords = text
        .split(',')
        .map(|f| parse_scalar(f.trim()))
        .collect::<Result<Vec<Scalar>, Error>>()?;
    Point::new(coords)
}

/// Flats are written "anchor;span[;span]", components rational.
fn parse_flat(text: &str) -> Result<Flat, Error> {
    let mut parts = text.split(';');
    let anchor = parse_point(
        parts
            .next()
            .ok_or_else(|| Error::InvalidInput("empty flat specification".into()))?,
    )?;
    let span: Vec<Vector> = parts
        .map(|p| {
            Ok(Vector(
                p.split(',')
                    .map(|f| parse_scalar(f.trim()))
                    .collect::<Result<Vec<Scalar>, Error>>()?,
            ))
        })
        .collect::<Result<Vec<Vector>, Error>>()?;
    match span.len() {
        0 => Ok(Flat::point(anchor)),
        1 => Flat::line(anchor, span.into_iter().next().unwrap()),
        2 => {
            let mut it = span.into_iter();
            Flat::plane(anchor, it.next().unwrap(), it.next().unwrap())
        }
        k => Err(Error::InvalidFlat(format!("{k} span vectors"))),
    }
}

fn parse_parts(text: &str) -> Result<PartitionFamily, Error> {
    let parts = text
        .split(';')
        .map(|group| {
            group
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad index {t:?}")))
                })
                .collect::<Result<Vec<usize>, Error>>()
        })
        .collect::<Result<Vec<Vec<usize>>, Error>>()?;
    Ok(PartitionFamily {
        parts,
        kind: PartitionKind::Tverberg,
    })
}

fn emit(output: Option<&std::path::Path>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn finish(
    output: Option<&std::path::Path>,
    command: &str,
    input_digest: Option<String>,
    parameters: Value,
    result: Value,
    started: Instant,
) -> Result<(), Error> {
    let report = Report {
        schema: SCHEMA_VERSION,
        command: command.into(),
        input_digest,
        parameters,
        result,
        timing_ms: started.elapsed().as_secs_f64() * 1000.0,
    };
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::InvalidInput(format!("serialization: {e}")))?;
    emit(output, &text)
}

#[allow(clippy::too_many_lines)]
fn run(cmd: Cmd, seed: u64, output: Option<&std::path::Path>) -> Result<(), Error> {
    let t0 = Instant::now();
    match cmd {
        Cmd::Depth { input, k, flat } => {
            let (ds, dg) = read_dataset(&input)?;
            let k = k.or(ds.k).ok_or_else(|| {
                Error::InvalidInput("pass --k or add a `# k=` pragma to the dataset".into())
            })?;
            let f = parse_flat(&flat)?;
            let cert = regression_depth(&f, k, &ds.points)?;
            finish(
                output,
                "depth",
                Some(dg),
                params(&[("k", json!(k)), ("flat", json!(flat)), ("seed", json!(seed))]),
                json!({ "flat": flat_value(&f), "certificate": certificate_value(&cert) }),
                t0,
            )
        }
        Cmd::Tukey { input, point } => {
            let (ds, dg) = read_dataset(&input)?;
            let p = parse_point(&point)?;
            let cert = tukey_depth(&p, &ds.points)?;
            finish(
                output,
                "tukey",
                Some(dg),
                params(&[("point", json!(point)), ("seed", json!(seed))]),
                json!({ "point": point_value(&p), "certificate": certificate_value(&cert) }),
                t0,
            )
        }
        Cmd::CrossingDistance { input, flat } => {
            if flat.len() != 2 {
                return Err(Error::InvalidInput(format!(
                    "crossing-distance needs exactly two --flat arguments, got {}",
                    flat.len()
                )));
            }
            let (ds, dg) = read_dataset(&input)?;
            let f = parse_flat(&flat[0])?;
            let g = parse_flat(&flat[1])?;
            let cert = crossing_distance(&f, &g, &ds.points)?;
            finish(
                output,
                "crossing-distance",
                Some(dg),
                params(&[("flat", json!(flat)), ("seed", json!(seed))]),
                json!({ "certificate": certificate_value(&cert) }),
                t0,
            )
        }
        Cmd::Catline { input } => {
            let (ds, dg) = read_dataset(&input)?;
            let (flat, cert) = catline(&ds.points)?;
            let n = ds.points.len();
            finish(
                output,
                "catline",
                Some(dg),
                params(&[("seed", json!(seed))]),
                json!({
                    "flat": flat_value(&flat),
                    "certificate": certificate_value(&cert),
                    "guarantee": n.div_ceil(3),
                }),
                t0,
            )
        }
        Cmd::Centerpoint { input } => {
            let (ds, dg) = read_dataset(&input)?;
            let c = centerpoint(&ds.points)?;
            let cert = tukey_depth(&c, &ds.points)?;
            let n = ds.points.len();
            let d = ds.dim;
            finish(
                output,
                "centerpoint",
                Some(dg),
                params(&[("seed", json!(seed))]),
                json!({
                    "point": point_value(&c),
                    "certificate": certificate_value(&cert),
                    "guarantee": n.div_ceil(d + 1),
                }),
                t0,
            )
        }
        Cmd::Hamsandwich2d { input } => {
            if input.len() != 2 {
                return Err(Error::InvalidInput(
                    "hamsandwich2d needs exactly two --input files".into(),
                ));
            }
            let (a, dga) = read_dataset(&input[0])?;
            let (b, dgb) = read_dataset(&input[1])?;
            let h = ham_sandwich_2d(&a.points, &b.points)?;
            finish(
                output,
                "hamsandwich2d",
                Some(format!("{dga}+{dgb}")),
                params(&[("seed", json!(seed))]),
                json!({ "cut": hyperplane_value(&h) }),
                t0,
            )
        }
        Cmd::Hamsandwich3d { input, budget } => {
            if input.len() != 3 {
                return Err(Error::InvalidInput(
                    "hamsandwich3d needs exactly three --input files".into(),
                ));
            }
            let (a, dga) = read_dataset(&input[0])?;
            let (b, dgb) = read_dataset(&input[1])?;
            let (c, dgc) = read_dataset(&input[2])?;
            let h = ham_sandwich_3d_seeded(&a.points, &b.points, &c.points, seed, budget, false)?;
            finish(
                output,
                "hamsandwich3d",
                Some(format!("{dga}+{dgb}+{dgc}")),
                params(&[("seed", json!(seed)), ("budget", json!(budget))]),
                json!({ "cut": hyperplane_value(&h) }),
                t0,
            )
        }
        Cmd::Sixsector { input } => {
            let (ds, dg) = read_dataset(&input)?;
            let w = six_sector_partition(&ds.points, seed)?;
            finish(
                output,
                "sixsector",
                Some(dg),
                params(&[("seed", json!(seed))]),
                json!({
                    "center": point_value(&w.center),
                    "lines": w.lines.iter().map(hyperplane_value).collect::<Vec<_>>(),
                    "sector_counts": w.sector_counts(),
                    "sector_assignment": w.sector_assignment,
                    "triple": w.triple,
                }),
                t0,
            )
        }
        Cmd::DeepLine3d { input, strategy } => {
            let (ds, dg) = read_dataset(&input)?;
            let strat = match strategy {
                Strategy::Median => DeepLineStrategy::Median,
                Strategy::ThreePiece => DeepLineStrategy::ThreePiece,
            };
            let (flat, guarantee, cert) = construct_deep_line_3d(&ds.points, strat)?;
            finish(
                output,
                "deep-line3d",
                Some(dg),
                params(&[
                    (
                        "strategy",
                        json!(match strat {
                            DeepLineStrategy::Median => "median",
                            DeepLineStrategy::ThreePiece => "three-piece",
                        }),
                    ),
                    ("seed", json!(seed)),
                ]),
                json!({
                    "flat": flat_value(&flat),
                    "certificate": certificate_value(&cert),
                    "guarantee": guarantee,
                }),
                t0,
            )
        }
        Cmd::DeepPlane3d { input } => {
            let (ds, dg) = read_dataset(&input)?;
            let (flat, guarantee, cert) = construct_deep_plane_3d(&ds.points, seed)?;
            finish(
                output,
                "deep-plane3d",
                Some(dg),
                params(&[("seed", json!(seed))]),
                json!({
                    "flat": flat_value(&flat),
                    "certificate": certificate_value(&cert),
                    "guarantee": guarantee,
                }),
                t0,
            )
        }
        Cmd::DeepestLine2d { input } => {
            let (ds, dg) = read_dataset(&input)?;
            let (flat, cert) = deepest_line_2d(&ds.points)?;
            finish(
                output,
                "deepest-line2d",
                Some(dg),
                params(&[("seed", json!(seed))]),
                json!({ "flat": flat_value(&flat), "certificate": certificate_value(&cert) }),
                t0,
            )
        }
        Cmd::Heuristic3d { input, k, budget } => {
            let (ds, dg) = read_dataset(&input)?;
            let (flat, cert) = deepest_flat_heuristic_3d(&ds.points, k, budget, seed)?;
            finish(
                output,
                "heuristic3d",
                Some(dg),
                params(&[("k", json!(k)), ("budget", json!(budget)), ("seed", json!(seed))]),
                json!({
                    "flat": flat_value(&flat),
                    "certificate": certificate_value(&cert),
                    "note": "heuristic lower bound; the certificate itself is exact",
                }),
                t0,
            )
        }
        Cmd::ApproxDeepest {
            input,
            k,
            delta,
            sample_size,
        } => {
            let (ds, dg) = read_dataset(&input)?;
            let n = ds.points.len();
            let d = ds.dim;
            let delta_v = parse_scalar(&delta)?;
            let mut p = ApproxParams::new(delta_v, d as u32, k as u32, n, seed)?;
            if let Some(m) = sample_size {
                p = p.with_sample_size(m, n);
            }
            let (flat, cert) = approx_deepest(&ds.points, k, &p)?;
            finish(
                output,
                "approx-deepest",
                Some(dg),
                params(&[
                    ("k", json!(k)),
                    ("delta", json!(delta)),
                    ("epsilon", json!(p.epsilon.to_string())),
                    ("sample_size", json!(p.sample_size)),
                    ("seed", json!(seed)),
                ]),
                json!({ "flat": flat_value(&flat), "certificate": certificate_value(&cert) }),
                t0,
            )
        }
        Cmd::Tverberg2d { input } => {
            let (ds, dg) = read_dataset(&input)?;
            let r = tverberg_partition_2d(&ds.points)?;
            let point = r
                .flat
                .affine()
                .expect("Tverberg flat is a point")
                .anchor()
                .clone();
            let tdepth = tukey_depth(&point, &ds.points)?;
            finish(
                output,
                "tverberg2d",
                Some(dg),
                params(&[("seed", json!(seed))]),
                json!({
                    "point": point_value(&point),
                    "parts": r.parts.parts,
                    "per_part_depth": r.per_part_depth,
                    "tukey_depth": tdepth.depth,
                }),
                t0,
            )
        }
        Cmd::VerifyTverberg {
            input,
            k,
            flat,
            parts,
        } => {
            let (ds, dg) = read_dataset(&input)?;
            let f = parse_flat(&flat)?;
            let family = parse_parts(&parts)?;
            let depths = verify_flat_tverberg(&f, k, &family, &ds.points)?;
            let all_positive = depths.iter().all(|&d| d >= 1);
            finish(
                output,
                "verify-tverberg",
                Some(dg),
                params(&[("k", json!(k)), ("flat", json!(flat)), ("parts", json!(parts))]),
                json!({ "per_part_depth": depths, "all_positive": all_positive }),
                t0,
            )
        }
        Cmd::Generate {
            kind,
            n,
            d,
            k,
            clusters,
            spread,
            distinct_x,
        } => {
            let gk = match kind.as_str() {
                "uniform-box" => GeneratorKind::UniformBox { d, distinct_x },
                "circle-equispaced" => GeneratorKind::CircleEquispaced,
                "sphere-projection" => GeneratorKind::SphereProjection,
                "clusters" => GeneratorKind::Clusters {
                    d,
                    clusters,
                    spread_thousandths: spread,
                },
                "collinear" => GeneratorKind::Collinear { d },
                "planted-flat" => GeneratorKind::PlantedFlat { k: k.unwrap_or(1) },
                "r31-lower-bound" => GeneratorKind::R31LowerBound,
                other => return Err(Error::InvalidSpec(format!("unknown generator {other:?}"))),
            };
            let spec = GeneratorSpec { kind: gk, n, seed };
            let points = generate(&spec)?;
            let dim = points.first().map(|p| p.dim()).unwrap_or(d);
            let ds = Dataset { points, dim, k };
            emit(output, emit_dataset(&ds).trim_end())
        }
        Cmd::Bounds { d, k } => {
            let table = BoundsTable::standard();
            let mut entries: Vec<Value> = Vec::new();
            for e in table.entries() {
                if let Some(want) = d {
                    if e.d != want {
                        continue;
                    }
                }
                if k.is_some() && e.k != k {
                    continue;
                }
                entries.push(json!({
                    "quantity": e.quantity.symbol(),
                    "d": e.d,
                    "k": e.k,
                    "value": e.value.render(),
                    "status": e.status.label(),
                    "note": e.note,
                    "text": e.render(),
                }));
            }
            let best = match (d, k) {
                (Some(d), Some(_)) => table
                    .proven_value(Quantity::DeepFlat, d, k)
                    .map(|v| json!(v))
                    .unwrap_or(Value::Null),
                _ => Value::Null,
            };
            finish(
                output,
                "bounds",
                None,
                params(&[("d", json!(d)), ("k", json!(k))]),
                json!({ "entries": entries, "proven_deep_flat": best }),
                t0,
            )
        }
        Cmd::Render {
            input,
            overlay,
            format,
        } => {
            if format != Format::Svg {
                return Err(Error::InvalidInput(
                    "render supports --format svg only".into(),
                ));
            }
            let (ds, _) = read_dataset(&input)?;
            let mut scene = svg::Scene::new(&ds.points);
            match overlay {
                Overlay::None => {}
                Overlay::Catline => {
                    let (flat, cert) = catline(&ds.points)?;
                    let h = flat
                        .affine()
                        .expect("catline is affine")
                        .containing_hyperplane()?;
                    scene.lines.push((h, "#4c78a8"));
                    if let Some(w) = cert.wedge() {
                        scene.wedge = Some(w.clone());
                    }
                }
                Overlay::Sixsector => {
                    let w = six_sector_partition(&ds.points, seed)?;
                    for l in &w.lines {
                        scene.lines.push((l.clone(), "#333333"));
                    }
                    for (i, &s) in w.sector_assignment.iter().enumerate() {
                        scene.point_colors[i] = s as usize;
                    }
                }
                Overlay::DeepestLine => {
                    let (flat, cert) = deepest_line_2d(&ds.points)?;
                    let h = flat
                        .affine()
                        .expect("deepest line is affine")
                        .containing_hyperplane()?;
                    scene.lines.push((h, "#4c78a8"));
                    if let Some(w) = cert.wedge() {
                        scene.wedge = Some(w.clone());
                    }
                }
            }
            emit(output, &scene.render())
        }
    }
}
