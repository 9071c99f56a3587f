use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geomodels::certificate::denominator_certificate;
use geomodels::chamber::{component_cell_bound, PolytopeCover, RegionFamily};
use geomodels::geography::{compute_geography, run_log_mmp, MmpOutcome};
use geomodels::linalg::{rational_string, QVector};
use geomodels::polytope::HPolytope;
use geomodels::rat::{rat, rat_int};
use geomodels::snc::{enumerate_low_discrepancy, CenterKind, SncConfig, StratumRef};
use geomodels::surface::{PairConfig, ZariskiOutcome};
use geomodels::Rational;
use geomodels_cli::checks;
use geomodels_cli::corpus::{named, FixtureData, FIXTURE_NAMES};
use geomodels_cli::formats::{
    parse_json, parse_rational, ChamberDocDto, HPolytopeDto, JsonInt, PairDto, SncConfigDto,
    VPolytopeDto,
};
use geomodels_cli::report::{emit, Format};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "geomodels",
    about = "Exact-arithmetic geography of log models on surfaces",
    version
)]
struct Cli {
    /// Window parameter, an exact rational strictly between 0 and 1/2
    #[arg(long, global = true, default_value = "1/10", value_parser = parse_rational)]
    eps: Rational,

    /// Discrepancy threshold, an exact rational
    #[arg(long, global = true, default_value = "1", value_parser = parse_rational)]
    threshold: Rational,

    /// Seed for the randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Exit with status 3 when a run ends in NotPseudoeffective
    #[arg(long, global = true)]
    require_psef: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Path to a JSON input document
    input: Option<PathBuf>,

    /// Use a named fixture instead of a file
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the vertices of a half-space polytope
    PolytopeVertices(InputArgs),

    /// Certify vertex denominators of a polytope inside the window
    DenominatorCertificate {
        #[command(flatten)]
        input: InputArgs,

        /// Bound on constraint entries (offsets must be strictly smaller)
        #[arg(long = "M", value_name = "M")]
        entry_bound: i64,
    },

    /// Validate a cell cover with marked regions and check the component bounds
    ChambersVerify(InputArgs),

    /// Run the contraction program on a boundary pair
    SurfaceMmp(InputArgs),

    /// Split a divisor class into its positive and negative parts
    SurfaceZariski {
        #[command(flatten)]
        input: InputArgs,

        /// Divisor class as comma-separated rationals (default: K + boundary)
        #[arg(long, value_name = "COORDS")]
        class: Option<String>,
    },

    /// Decompose the coefficient window into constant-model chambers
    SurfaceGeography {
        #[command(flatten)]
        input: InputArgs,

        /// Comma-separated names of tracked curves (default: every curve)
        #[arg(long, value_name = "NAMES")]
        curves: Option<String>,
    },

    /// List valuations with discrepancy below the threshold over the strata
    ValuationsEnumerate(InputArgs),

    /// Run named verification sweeps from a suite file
    VerifyBounds {
        /// JSON suite: {"checks": ["name", ...]} or a bare array of names
        suite: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    match dispatch(&cli) {
        Ok((report, code)) => {
            print!("{}", emit(&report, format));
            ExitCode::from(code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, u8), String> {
    if cli.eps <= rat_int(0) || cli.eps >= rat(1, 2) {
        return Err(format!(
            "--eps must lie strictly between 0 and 1/2, got {}",
            rational_string(&cli.eps)
        ));
    }
    match &cli.command {
        Command::PolytopeVertices(input) => polytope_vertices(input),
        Command::DenominatorCertificate { input, entry_bound } => {
            certificate(input, *entry_bound, &cli.eps)
        }
        Command::ChambersVerify(input) => chambers_verify(input),
        Command::SurfaceMmp(input) => surface_mmp(input, cli.require_psef),
        Command::SurfaceZariski { input, class } => {
            surface_zariski(input, class.as_deref(), cli.require_psef)
        }
        Command::SurfaceGeography { input, curves } => {
            surface_geography(input, curves.as_deref(), &cli.eps)
        }
        Command::ValuationsEnumerate(input) => valuations(input, &cli.threshold),
        Command::VerifyBounds { suite } => verify_bounds(suite, cli.seed),
    }
}

// ---------------------------------------------------------------- input

enum Loaded {
    Doc(String),
    Fixture(FixtureData),
}

fn load(args: &InputArgs) -> Result<Loaded, String> {
    match (&args.input, &args.fixture) {
        (Some(_), Some(_)) => Err("pass either an input path or --fixture, not both".into()),
        (Some(path), None) => fs::read_to_string(path)
            .map(Loaded::Doc)
            .map_err(|e| format!("cannot read {}: {e}", path.display())),
        (None, Some(name)) => named(name).map(Loaded::Fixture).ok_or_else(|| {
            format!(
                "unknown fixture `{name}`; available: {}",
                FIXTURE_NAMES.join(", ")
            )
        }),
        (None, None) => Err("an input path or --fixture is required".into()),
    }
}

fn load_polytope(args: &InputArgs) -> Result<HPolytope, String> {
    match load(args)? {
        Loaded::Doc(text) => parse_json::<HPolytopeDto>(&text)?.to_polytope(),
        Loaded::Fixture(FixtureData::Polytope(h)) => Ok(h),
        Loaded::Fixture(_) => Err("this fixture is not a polytope".into()),
    }
}

fn load_pair(args: &InputArgs) -> Result<PairConfig, String> {
    match load(args)? {
        Loaded::Doc(text) => parse_json::<PairDto>(&text)?.to_pair(),
        Loaded::Fixture(FixtureData::Pair(p)) => Ok(p),
        Loaded::Fixture(_) => Err("this fixture is not a surface pair".into()),
    }
}

fn load_snc(args: &InputArgs) -> Result<SncConfig, String> {
    match load(args)? {
        Loaded::Doc(text) => parse_json::<SncConfigDto>(&text)?.to_config(),
        Loaded::Fixture(FixtureData::Snc(c)) => Ok(c),
        Loaded::Fixture(_) => Err("this fixture is not a crossing configuration".into()),
    }
}

// ---------------------------------------------------------------- helpers

fn int_value(n: &BigInt) -> Value {
    serde_json::to_value(JsonInt(n.clone())).expect("integers serialize")
}

fn rat_strings(coords: &[Rational]) -> Vec<String> {
    coords.iter().map(rational_string).collect()
}

// ---------------------------------------------------------------- commands

fn polytope_vertices(args: &InputArgs) -> Result<(Value, u8), String> {
    let h = load_polytope(args)?;
    let v = h.vertices().map_err(|e| e.to_string())?;
    let dto = VPolytopeDto::from_polytope(&v);
    Ok((serde_json::to_value(dto).expect("dto serializes"), 0))
}

fn certificate(args: &InputArgs, entry_bound: i64, eps: &Rational) -> Result<(Value, u8), String> {
    if entry_bound <= 0 {
        return Err(format!("--M must be positive, got {entry_bound}"));
    }
    let h = load_polytope(args)?;
    let report = denominator_certificate(&h, &BigInt::from(entry_bound), eps)
        .map_err(|e| e.to_string())?;
    let vertices: Vec<Value> = report
        .vertices
        .iter()
        .map(|vc| {
            json!({
                "vertex": rat_strings(&vc.vertex),
                "lcm_denominator": int_value(&vc.lcm_denominator),
                "in_window": vc.in_window,
                "within_bound": vc.within_bound,
            })
        })
        .collect();
    let value = json!({
        "dim": report.dim,
        "eps": rational_string(eps),
        "entry_bound": int_value(&report.entry_bound),
        "denominator_bound": int_value(&report.denominator_bound),
        "vertices": vertices,
        "all_certified": report.all_certified,
    });
    Ok((value, if report.all_certified { 0 } else { 1 }))
}

fn chambers_verify(args: &InputArgs) -> Result<(Value, u8), String> {
    let doc: ChamberDocDto = match load(args)? {
        Loaded::Doc(text) => parse_json(&text)?,
        Loaded::Fixture(_) => {
            return Err("chamber documents have no fixture; pass a JSON path".into())
        }
    };
    let ambient = doc.ambient.to_polytope()?;
    let p = ambient.dim();
    let cells = doc
        .cells
        .iter()
        .map(|c| c.to_polytope())
        .collect::<Result<Vec<_>, _>>()?;
    let regions = doc
        .regions
        .iter()
        .map(|r| r.to_polytope())
        .collect::<Result<Vec<_>, _>>()?;
    let cover = PolytopeCover::new(ambient, cells).map_err(|e| e.to_string())?;
    let k = regions.len();
    let family = RegionFamily::new(cover, regions).map_err(|e| e.to_string())?;
    let upward = family.upward_flags().to_vec();
    let m = family.max_pattern_cells();

    let mut report = json!({
        "dim": p,
        "cells": family.cover().cells().len(),
        "regions": k,
        "upward": upward,
    });
    let mut code = 0u8;
    if upward.iter().all(|&b| b) && k > 0 {
        let components = family.total_pattern_components().map_err(|e| e.to_string())?;
        let counts = family.unmarked_face_counts().map_err(|e| e.to_string())?;
        let bound = component_cell_bound(k, m, p).map_err(|e| e.to_string())?;
        let bound_holds = BigInt::from(components) <= bound;
        let mut recursion_holds = counts[0] <= m * k;
        for d in 1..counts.len() {
            recursion_holds &= counts[d] <= counts[d - 1] * counts[d - 1];
        }
        if !(bound_holds && recursion_holds) {
            code = 1;
        }
        report["max_pattern_cells"] = json!(m);
        report["components"] = json!(components);
        report["component_bound"] = int_value(&bound);
        report["bound_holds"] = json!(bound_holds);
        report["unmarked_face_counts"] = json!(counts);
        report["face_recursion_holds"] = json!(recursion_holds);
        report["bounds_checked"] = json!(true);
    } else {
        report["bounds_checked"] = json!(false);
    }
    Ok((report, code))
}

fn surface_mmp(args: &InputArgs, require_psef: bool) -> Result<(Value, u8), String> {
    let cfg = load_pair(args)?;
    let trace = run_log_mmp(&cfg).map_err(|e| e.to_string())?;
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|st| {
            json!({
                "contracted": st.contracted,
                "pairing": rational_string(&st.value),
                "discrepancy": rational_string(&st.discrepancy),
            })
        })
        .collect();
    let outcome = match trace.outcome {
        MmpOutcome::LogTerminalModel => "log-terminal-model",
        MmpOutcome::NotPseudoeffective => "not-pseudoeffective",
    };
    let final_pair = &trace.final_pair;
    let final_boundary: Vec<Value> = final_pair
        .boundary()
        .iter()
        .map(|(i, c)| {
            json!({
                "curve": final_pair.surface().curves()[*i].name,
                "coeff": rational_string(c),
            })
        })
        .collect();
    let report = json!({
        "contractions": trace.steps.len(),
        "steps": steps,
        "contracted": trace.fingerprint().into_iter().collect::<Vec<_>>(),
        "outcome": outcome,
        "final_rank": final_pair.surface().rank(),
        "final_boundary": final_boundary,
    });
    let code = if trace.outcome == MmpOutcome::NotPseudoeffective && require_psef {
        3
    } else {
        0
    };
    Ok((report, code))
}

fn parse_class(text: &str, rank: usize) -> Result<QVector, String> {
    let coords = text
        .split(',')
        .map(|part| parse_rational(part))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != rank {
        return Err(format!(
            "--class has {} coordinates but the lattice has rank {rank}",
            coords.len()
        ));
    }
    Ok(QVector::new(coords))
}

fn surface_zariski(
    args: &InputArgs,
    class: Option<&str>,
    require_psef: bool,
) -> Result<(Value, u8), String> {
    let cfg = load_pair(args)?;
    let surface = cfg.surface();
    let d = match class {
        Some(text) => parse_class(text, surface.rank())?,
        None => cfg.log_class(),
    };
    let outcome = surface.zariski(&d).map_err(|e| e.to_string())?;
    let mut report = json!({ "class": rat_strings(d.coords()) });
    let code = match outcome {
        ZariskiOutcome::Decomposition(z) => {
            let negative: Vec<Value> = z
                .negative
                .iter()
                .map(|(name, coeff)| json!({"curve": name, "coeff": rational_string(coeff)}))
                .collect();
            report["outcome"] = json!("decomposition");
            report["positive"] = json!(rat_strings(z.positive.coords()));
            report["negative"] = json!(negative);
            0
        }
        ZariskiOutcome::NotPseudoeffective => {
            report["outcome"] = json!("not-pseudoeffective");
            if require_psef {
                3
            } else {
                0
            }
        }
    };
    Ok((report, code))
}

fn surface_geography(
    args: &InputArgs,
    curves: Option<&str>,
    eps: &Rational,
) -> Result<(Value, u8), String> {
    let cfg = load_pair(args)?;
    let surface = cfg.surface();
    let tracked: Vec<String> = match curves {
        Some(list) => {
            let names: Vec<String> = list
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if names.is_empty() {
                return Err("--curves names no curves".into());
            }
            names
        }
        None => surface.curves().iter().map(|c| c.name.clone()).collect(),
    };
    // Pairs of tracked curves that actually intersect on the surface.
    let mut meets = Vec::new();
    for i in 0..tracked.len() {
        for j in i + 1..tracked.len() {
            let a = surface
                .curve(&tracked[i])
                .ok_or_else(|| format!("unknown curve `{}`", tracked[i]))?;
            let b = surface
                .curve(&tracked[j])
                .ok_or_else(|| format!("unknown curve `{}`", tracked[j]))?;
            if surface.pairing(&a.class, &b.class) > rat_int(0) {
                meets.push((i, j));
            }
        }
    }
    let refs: Vec<&str> = tracked.iter().map(String::as_str).collect();
    let geo = compute_geography(surface, &refs, eps, &meets).map_err(|e| e.to_string())?;
    let walls: Vec<Value> = geo
        .walls
        .iter()
        .map(|w| {
            json!({
                "normal": w.normal.iter().map(int_value).collect::<Vec<_>>(),
                "offset": int_value(&w.offset),
            })
        })
        .collect();
    let chambers: Vec<Value> = geo
        .chambers
        .iter()
        .map(|ch| {
            let vertices: Vec<Value> = ch
                .hull
                .vertices()
                .iter()
                .map(|v| json!(rat_strings(v.coords())))
                .collect();
            json!({
                "fingerprint": ch.fingerprint.iter().collect::<Vec<_>>(),
                "cells": ch.cells,
                "vertices": vertices,
                "lcm_denominator": int_value(&ch.lcm_denominator),
                "terminal": ch.terminal,
            })
        })
        .collect();
    let report = json!({
        "eps": rational_string(eps),
        "walls": walls,
        "chambers": chambers,
        "terminal_count": geo.terminal_count(),
    });
    Ok((report, 0))
}

fn valuations(args: &InputArgs, threshold: &Rational) -> Result<(Value, u8), String> {
    let cfg = load_snc(args)?;
    let mut strata: Vec<StratumRef> = cfg
        .pair_strata()
        .iter()
        .map(|&(i, j, _)| StratumRef::Pair(i, j))
        .collect();
    strata.extend(
        cfg.triple_strata()
            .iter()
            .map(|&(i, j, k, _)| StratumRef::Triple(i, j, k)),
    );
    let enumeration =
        enumerate_low_discrepancy(&cfg, &strata, threshold).map_err(|e| e.to_string())?;
    let records: Vec<Value> = enumeration
        .records
        .iter()
        .map(|r| {
            let trail: Vec<Value> = r
                .trail
                .iter()
                .map(|step| {
                    json!({
                        "kind": match step.kind {
                            CenterKind::Curve => "curve",
                            CenterKind::Point => "point",
                        },
                        "divisors": step.divisors,
                    })
                })
                .collect();
            json!({
                "name": r.name,
                "discrepancy": rational_string(&r.discrepancy),
                "depth": r.depth,
                "multiplicities": r.multiplicities.iter().map(int_value).collect::<Vec<_>>(),
                "trail": trail,
            })
        })
        .collect();
    let report = json!({
        "threshold": rational_string(threshold),
        "count": records.len(),
        "max_depth": enumeration.max_depth,
        "records": records,
    });
    Ok((report, 0))
}

fn parse_suite(text: &str) -> Result<Vec<String>, String> {
    #[derive(serde::Deserialize)]
    struct SuiteDto {
        checks: Vec<String>,
    }
    if let Ok(doc) = serde_json::from_str::<SuiteDto>(text) {
        return Ok(doc.checks);
    }
    if let Ok(names) = serde_json::from_str::<Vec<String>>(text) {
        return Ok(names);
    }
    Err("malformed JSON: suite must be {\"checks\": [...]} or an array of names".into())
}

fn verify_bounds(suite: &PathBuf, seed: u64) -> Result<(Value, u8), String> {
    let text = fs::read_to_string(suite)
        .map_err(|e| format!("cannot read {}: {e}", suite.display()))?;
    let names: BTreeSet<String> = parse_suite(&text)?.into_iter().collect();
    // Reject unknown names before running anything.
    for name in &names {
        if !checks::CHECK_NAMES.contains(&name.as_str()) {
            return Err(format!(
                "unknown check name `{name}`; available: {}",
                checks::CHECK_NAMES.join(", ")
            ));
        }
    }
    let mut outcomes = Vec::new();
    let mut failed = 0usize;
    for name in &names {
        let outcome = checks::run_named(name, seed)?;
        if !outcome.pass {
            failed += 1;
        }
        outcomes.push(json!({
            "name": outcome.name,
            "pass": outcome.pass,
            "witness": outcome.witness,
        }));
    }
    let report = json!({
        "seed": seed,
        "total": names.len(),
        "passed": names.len() - failed,
        "failed": failed,
        "checks": outcomes,
    });
    Ok((report, if failed > 0 { 1 } else { 0 }))
}
