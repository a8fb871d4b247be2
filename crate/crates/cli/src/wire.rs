//! JSON wire forms. Exact rationals travel as {"num": "...", "den": "..."}
//! decimal strings; polynomials in T as arrays of those, constant term first.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ellsurf::arith::{parse_rat, BiPolyQ, Int, PolyQ, Rat};
use ellsurf::construction::{catalog_entry, RatPointQT, SurfaceForm, SurfaceQT, CATALOG_NAMES};
use ellsurf::mordell_weil::CurvePoint;
use ellsurf::transforms::{Isomorphism, WeierstrassQ};
use serde_json::{json, Value};

/// Significant digits kept for floating fields, so reruns serialize identically.
pub const FLOAT_DIGITS: usize = 14;

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{:.*e}", FLOAT_DIGITS - 1, x).parse().expect("formatted float");
    json!(rounded)
}

pub fn rat(v: &Rat) -> Value {
    json!({ "num": v.numer().to_string(), "den": v.denom().to_string() })
}

pub fn int(v: &Int) -> Value {
    json!(v.to_string())
}

pub fn poly(p: &PolyQ) -> Value {
    Value::Array(p.coeffs().iter().map(rat).collect())
}

pub fn surface(s: &SurfaceQT) -> Value {
    let (form, coeffs): (&str, Vec<Value>) = match &s.form {
        SurfaceForm::Weierstrass(a) => ("weierstrass", a.iter().map(poly).collect()),
        SurfaceForm::Discriminant(f) => ("discriminant", f.rows().iter().map(poly).collect()),
    };
    json!({ "form": form, "coeffs": coeffs, "provenance": s.provenance })
}

pub fn curve(e: &WeierstrassQ) -> Value {
    Value::Array(e.coeffs().iter().map(rat).collect())
}

pub fn section(p: &RatPointQT) -> Value {
    json!({ "x": poly(&p.x), "y": poly(&p.y) })
}

pub fn point(p: &CurvePoint) -> Value {
    match p {
        CurvePoint::Infinity => json!("infinity"),
        CurvePoint::Affine { x, y } => json!({ "x": rat(x), "y": rat(y) }),
    }
}

pub fn isomorphism(iso: &Isomorphism) -> Value {
    json!({ "u": rat(&iso.u), "r": rat(&iso.r), "s": rat(&iso.s), "t": rat(&iso.t) })
}

pub fn parse_rational(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => Ok(parse_rat(s)?),
        Value::Number(n) if n.is_i64() => Ok(Rat::from(n.as_i64().expect("checked"))),
        Value::Object(m) => {
            let field =
                |k: &str| m.get(k).and_then(Value::as_str).ok_or_else(|| anyhow!("rational needs string field {k:?}"));
            let (num, den) = (field("num")?, field("den")?);
            Ok(parse_rat(&format!("{num}/{den}"))?)
        }
        other => bail!("not a rational: {other}"),
    }
}

/// An array of rationals, or a single rational read as a constant.
pub fn parse_poly(v: &Value) -> Result<PolyQ> {
    match v {
        Value::Array(cs) => Ok(PolyQ::new(cs.iter().map(parse_rational).collect::<Result<_>>()?)),
        other => Ok(PolyQ::constant(parse_rational(other)?)),
    }
}

pub fn parse_surface(v: &Value) -> Result<SurfaceQT> {
    let form = v.get("form").and_then(Value::as_str).ok_or_else(|| anyhow!("curve needs a \"form\" string"))?;
    let coeffs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| anyhow!("curve needs a \"coeffs\" array"))?;
    let polys: Vec<PolyQ> = coeffs.iter().map(parse_poly).collect::<Result<_>>()?;
    let provenance = v.get("provenance").and_then(Value::as_str).unwrap_or("file").to_string();
    match form {
        "weierstrass" => {
            let a: [PolyQ; 5] = polys.try_into().map_err(|p: Vec<PolyQ>| {
                anyhow!("weierstrass form needs 5 coefficients [a1, a2, a3, a4, a6], got {}", p.len())
            })?;
            Ok(SurfaceQT::weierstrass(a, provenance)?)
        }
        "discriminant" => Ok(SurfaceQT::discriminant_form(BiPolyQ::from_rows(polys), provenance)?),
        other => bail!("unknown curve form {other:?}; expected weierstrass or discriminant"),
    }
}

pub fn parse_section(v: &Value) -> Result<RatPointQT> {
    let get = |k: &str| v.get(k).ok_or_else(|| anyhow!("point needs field {k:?}"));
    Ok(RatPointQT::new(parse_poly(get("x")?)?, parse_poly(get("y")?)?))
}

/// Parses "x,y" with rational entries.
pub fn parse_xy(s: &str) -> Result<(Rat, Rat)> {
    let (x, y) = s.split_once(',').ok_or_else(|| anyhow!("expected x,y but got {s:?}"))?;
    Ok((parse_rat(x)?, parse_rat(y)?))
}

/// A curve named on the command line, with whatever came along with it.
pub struct Source {
    pub label: String,
    pub surface: SurfaceQT,
    pub points: Vec<RatPointQT>,
    pub default_t0: Option<Rat>,
    pub reference_det: Option<f64>,
    pub claimed_rank: Option<usize>,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_points(path: &Path) -> Result<Vec<RatPointQT>> {
    let v = read_json(path)?;
    let list = v.get("points").unwrap_or(&v);
    let arr = list.as_array().ok_or_else(|| anyhow!("{}: expected an array of points", path.display()))?;
    arr.iter().map(parse_section).collect()
}

/// Catalog name, or a JSON file holding a curve (optionally under "surface")
/// and optional "points", "default_t0", "reference_det".
pub fn load_source(spec: &str) -> Result<Source> {
    if CATALOG_NAMES.contains(&spec) {
        let e = catalog_entry(spec)?;
        return Ok(Source {
            label: e.name.to_string(),
            surface: e.surface,
            points: e.points,
            default_t0: e.default_t0,
            reference_det: e.reference_det,
            claimed_rank: Some(e.claimed_rank),
        });
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("{spec:?} is neither a catalog curve ({}) nor a file", CATALOG_NAMES.join(", "));
    }
    let v = read_json(path)?;
    let surface = parse_surface(v.get("surface").unwrap_or(&v))?;
    let points = match v.get("points") {
        Some(Value::Array(ps)) => ps.iter().map(parse_section).collect::<Result<_>>()?,
        _ => Vec::new(),
    };
    let default_t0 = v.get("default_t0").filter(|t| !t.is_null()).map(parse_rational).transpose()?;
    Ok(Source {
        label: spec.to_string(),
        surface,
        points,
        default_t0,
        reference_det: v.get("reference_det").and_then(Value::as_f64),
        claimed_rank: v.get("claimed_rank").and_then(Value::as_u64).map(|r| r as usize),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        let want = Rat::from((-3, 4));
        assert_eq!(parse_rational(&rat(&want)).unwrap(), want);
        assert_eq!(parse_rational(&json!("-6/8")).unwrap(), want);
        assert_eq!(parse_rational(&json!(5)).unwrap(), Rat::from(5));
        assert!(parse_rational(&json!(0.5)).is_err());
    }

    #[test]
    fn surface_round_trip() {
        let e = catalog_entry("rank8-quartic").unwrap();
        let back = parse_surface(&surface(&e.surface)).unwrap();
        assert_eq!(back, e.surface);
        let p = &e.points[0];
        assert_eq!(&parse_section(&section(p)).unwrap(), p);
    }

    #[test]
    fn floats_are_rounded() {
        assert_eq!(float(0.1 + 0.2), json!(0.3));
        assert_eq!(float(f64::NAN), Value::Null);
    }
}
