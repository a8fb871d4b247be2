use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use ellsurf::arith::{parse_rat, Rat};
use ellsurf::mordell_weil::{independence_test, match_normalization, CurvePoint, DEFAULT_PRECISION_BITS, DEFAULT_TAU};
use ellsurf::transforms::specialize;
use serde_json::{json, Value};

use crate::wire;
use crate::{Run, PRECISION_ENV};

#[derive(Args, Debug)]
pub struct HeightsArgs {
    /// Catalog name or curve JSON file.
    #[arg(long, value_name = "NAME|FILE")]
    pub curve: String,
    /// JSON file with a "points" array (default: the points that came with the curve).
    #[arg(long, value_name = "FILE")]
    pub points: Option<PathBuf>,
    /// Fiber T = t0 (default: the curve's own default, or 0 for curves constant in T).
    #[arg(long, value_name = "T0", allow_hyphen_values = true)]
    pub specialize: Option<String>,
    #[arg(long, value_name = "BITS", env = PRECISION_ENV, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision: u32,
    /// Rank threshold relative to the largest diagonal entry.
    #[arg(long, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
    /// Determinant to match up to a factor 2^(±n) (default: the catalog's published value).
    #[arg(long, value_name = "DET")]
    pub reference_det: Option<f64>,
    /// Exit with status 1 unless exactly this many points are independent.
    #[arg(long, value_name = "K")]
    pub expect_independent: Option<usize>,
}

pub fn run(args: &HeightsArgs, run: &mut Run) -> Result<()> {
    run.constants.insert("precision_bits".into(), args.precision.to_string());
    let src = wire::load_source(&args.curve)?;
    let sections = match &args.points {
        Some(path) => wire::read_points(path)?,
        None => src.points.clone(),
    };
    if sections.is_empty() {
        bail!("no points: pass --points or a curve file with a \"points\" array");
    }
    for (i, p) in sections.iter().enumerate() {
        if !src.surface.contains(p) {
            bail!("point {} {} is not on the curve", i + 1, p);
        }
    }
    let t0 = match (&args.specialize, &src.default_t0) {
        (Some(t), _) => parse_rat(t)?,
        (None, Some(t)) => t.clone(),
        (None, None) if src.surface.deg_t() == 0 => Rat::new(),
        (None, None) => bail!("the curve depends on T; pass --specialize t0"),
    };
    let fiber = run.timed("specialize", || specialize(&src.surface, &t0))?;
    let points: Vec<CurvePoint> = sections.iter().map(|p| fiber.map_point(p)).collect::<ellsurf::Result<_>>()?;
    let rep = run.timed("heights", || independence_test(&fiber.curve, &points, args.precision, args.tau))?;
    let g = &rep.gram;
    let reference = args.reference_det.or(src.reference_det);
    let normalization = reference.map(|target| {
        let m = match_normalization(g.det, points.len(), target);
        json!({
            "reference": wire::float(target),
            "exponent": m.exponent,
            "scaled_det": wire::float(m.scaled),
            "relative_error": wire::float(m.relative_error),
        })
    });
    let matrix: Vec<Value> =
        g.matrix.iter().map(|row| Value::Array(row.iter().map(|&v| wire::float(v)).collect())).collect();
    let relations: Vec<Value> = rep
        .relations
        .iter()
        .map(|r| json!({ "coeffs": r.coeffs, "torsion_order": r.torsion_order, "verified": r.verified() }))
        .collect();
    let out = json!({
        "curve": src.label,
        "t0": wire::rat(&t0),
        "route": fiber.route.to_string(),
        "fiber": wire::curve(&fiber.curve),
        "points": points.iter().map(wire::point).collect::<Vec<_>>(),
        "precision_bits": g.precision,
        "tau": wire::float(g.tau),
        "matrix": matrix,
        "det": wire::float(g.det),
        "numerical_rank": g.numerical_rank,
        "independent_count": rep.independent_count,
        "independent": rep.independent.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "relations": relations,
        "inconclusive": rep.inconclusive,
        "advice": rep.advice,
        "normalization": normalization,
    });
    run.json("heights.json", &out);
    if let Some(k) = args.expect_independent {
        if rep.independent_count != k {
            run.fail(format!("expected {k} independent points, found {}", rep.independent_count));
        }
    }
    Ok(())
}
