use anyhow::{anyhow, bail, Result};
use clap::{Args, ValueEnum};
use ellsurf::arith::{parse_rat, Rat};
use ellsurf::mordell_weil::CurvePoint;
use ellsurf::transforms::{
    depressed_quartic_to_cubic, minimal_model, quartic_contains, specialize, square_constant_quartic_to_cubic,
    PointMap, QuarticPoint, WeierstrassQ,
};
use serde_json::{json, Value};

use crate::wire;
use crate::Run;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    /// y^2 = x^4 - 6c x^2 + 4d x + e (needs --c --d --e).
    Depressed,
    /// v^2 = a u^4 + b u^3 + c u^2 + d u + q^2 (needs --a --b --c --d --q).
    SquareConst,
    /// Global minimal model of a curve over Q (needs --coeffs or --curve).
    Minimal,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// a1,a2,a3,a4,a6 of a curve over Q.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<String>>,
    /// Catalog name or curve JSON file; its fiber at --specialize is minimalized.
    #[arg(long, value_name = "NAME|FILE", conflicts_with = "coeffs")]
    pub curve: Option<String>,
    #[arg(long, value_name = "T0", allow_hyphen_values = true)]
    pub specialize: Option<String>,
    /// Sample point "x,y"; for quartic modes also "inf+" or "inf-".
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
}

fn need(v: &Option<String>, name: &str) -> Result<Rat> {
    let s = v.as_ref().ok_or_else(|| anyhow!("this mode needs --{name}"))?;
    Ok(parse_rat(s)?)
}

fn quartic_point(s: &str) -> Result<QuarticPoint> {
    Ok(match s.trim() {
        "inf+" => QuarticPoint::InfinityPlus,
        "inf-" => QuarticPoint::InfinityMinus,
        xy => {
            let (x, y) = wire::parse_xy(xy)?;
            QuarticPoint::affine(x, y)
        }
    })
}

fn quartic_point_json(p: &QuarticPoint) -> Value {
    match p {
        QuarticPoint::Affine { x, y } => json!({ "x": wire::rat(x), "y": wire::rat(y) }),
        QuarticPoint::InfinityPlus => json!("inf+"),
        QuarticPoint::InfinityMinus => json!("inf-"),
    }
}

/// Sends the sample point through the map and back.
fn quartic_sample(map: &PointMap, point: &Option<String>, run: &mut Run) -> Result<Value> {
    let Some(s) = point else { return Ok(Value::Null) };
    let p = quartic_point(s)?;
    if let QuarticPoint::Affine { x, y } = &p {
        if !quartic_contains(map.source(), x, y) {
            bail!("point ({x}, {y}) is not on the quartic");
        }
    }
    let image = map.forward(&p)?;
    let excluded = map.inverse_exclusions().contains(&image);
    let back = if excluded { None } else { map.inverse(&image).ok() };
    let on_target = map.target().contains(&image);
    let round_trip = on_target && (excluded || back.as_ref() == Some(&p));
    if !round_trip {
        run.fail(format!("round trip failed for {s}"));
    }
    Ok(json!({
        "input": quartic_point_json(&p),
        "image": wire::point(&image),
        "inverse": back.as_ref().map(quartic_point_json),
        "on_target": on_target,
        "round_trip": round_trip,
    }))
}

fn depressed(args: &TransformArgs, run: &mut Run) -> Result<()> {
    let (c, d, e) = (need(&args.c, "c")?, need(&args.d, "d")?, need(&args.e, "e")?);
    let cubic = run.timed("transform", || depressed_quartic_to_cubic(&c, &d, &e))?;
    let sample = quartic_sample(&cubic.map, &args.point, run)?;
    run.json(
        "transform.json",
        &json!({
            "mode": "depressed",
            "quartic": cubic.map.source().iter().map(wire::rat).collect::<Vec<_>>(),
            "g2": wire::rat(&cubic.g2),
            "g3": wire::rat(&cubic.g3),
            "curve": wire::curve(&cubic.curve),
            "point": sample,
        }),
    );
    Ok(())
}

fn square_const(args: &TransformArgs, run: &mut Run) -> Result<()> {
    let (a, b, c, d, q) =
        (need(&args.a, "a")?, need(&args.b, "b")?, need(&args.c, "c")?, need(&args.d, "d")?, need(&args.q, "q")?);
    let (curve, map) = run.timed("transform", || square_constant_quartic_to_cubic(&a, &b, &c, &d, &q))?;
    let sample = quartic_sample(&map, &args.point, run)?;
    run.json(
        "transform.json",
        &json!({
            "mode": "square-const",
            "quartic": map.source().iter().map(wire::rat).collect::<Vec<_>>(),
            "curve": wire::curve(&curve),
            "point": sample,
        }),
    );
    Ok(())
}

fn minimal(args: &TransformArgs, run: &mut Run) -> Result<()> {
    let (curve, mut points, label) = match (&args.coeffs, &args.curve) {
        (Some(cs), _) => {
            let a: Vec<Rat> = cs.iter().map(|s| parse_rat(s)).collect::<ellsurf::Result<_>>()?;
            let a: [Rat; 5] = a.try_into().map_err(|_| anyhow!("--coeffs needs five values a1,a2,a3,a4,a6"))?;
            (WeierstrassQ::new(a)?, Vec::new(), "coeffs".to_string())
        }
        (None, Some(spec)) => {
            let src = wire::load_source(spec)?;
            let t0 = match (&args.specialize, &src.default_t0) {
                (Some(t), _) => parse_rat(t)?,
                (None, Some(t)) => t.clone(),
                (None, None) => Rat::new(),
            };
            let fiber = specialize(&src.surface, &t0)?;
            let pts = src.points.iter().map(|p| fiber.map_point(p)).collect::<ellsurf::Result<Vec<_>>>()?;
            (fiber.curve, pts, format!("{} at T = {t0}", src.label))
        }
        (None, None) => bail!("minimal mode needs --coeffs or --curve"),
    };
    if let Some(s) = &args.point {
        let (x, y) = wire::parse_xy(s)?;
        if !curve.contains_xy(&x, &y) {
            bail!("point ({x}, {y}) is not on the curve");
        }
        points.insert(0, CurvePoint::affine(x, y));
    }
    let (m, iso) = run.timed("minimal", || minimal_model(&curve))?;
    let mut all_ok = true;
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            let image = iso.map_point(p);
            let ok = m.contains(&image) && iso.unmap_point(&image) == *p;
            all_ok &= ok;
            json!({ "input": wire::point(p), "image": wire::point(&image), "round_trip": ok })
        })
        .collect();
    if !all_ok {
        run.fail("a point did not survive the round trip to the minimal model");
    }
    let c = m.coeffs();
    run.json(
        "transform.json",
        &json!({
            "mode": "minimal",
            "source": label,
            "curve": wire::curve(&curve),
            "minimal": wire::curve(&m),
            "isomorphism": wire::isomorphism(&iso),
            "discriminant": wire::rat(m.discriminant()),
            // For y^2 + ... = x^3 - x^2 - α x + β.
            "alpha": wire::rat(&-c[3].clone()),
            "beta": wire::rat(&c[4]),
            "points": rows,
            "round_trip": all_ok,
        }),
    );
    Ok(())
}

pub fn run(args: &TransformArgs, run: &mut Run) -> Result<()> {
    match args.mode {
        Mode::Depressed => depressed(args, run),
        Mode::SquareConst => square_const(args, run),
        Mode::Minimal => minimal(args, run),
    }
}
