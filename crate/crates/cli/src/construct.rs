use anyhow::{Context, Result};
use clap::{ArgGroup, Args};
use ellsurf::arith::{parse_int, Int};
use ellsurf::construction::{
    admissibility_check, catalog_entry, classify_rationality, rank6_to_weierstrass, solve_rank6, Rationality,
};
use serde_json::{json, Value};

use crate::wire;
use crate::Run;

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["roots", "catalog"])))]
pub struct ConstructArgs {
    /// Six distinct nonzero integers ρ; the discriminant roots are their squares.
    #[arg(long, num_args = 6, value_name = "RHO", allow_negative_numbers = true)]
    pub roots: Option<Vec<String>>,
    /// rank6-weierstrass, rank7-quartic, rank8-quartic or dependent10.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
}

fn rationality(r: Rationality) -> &'static str {
    match r {
        Rationality::Rational => "rational",
        Rationality::Undetermined => "undetermined",
    }
}

pub fn parse_roots(roots: &[String]) -> Result<[Int; 6]> {
    let parsed: Vec<Int> =
        roots.iter().map(|r| parse_int(r).with_context(|| format!("root {r:?}"))).collect::<Result<_>>()?;
    Ok(parsed.try_into().expect("clap enforces six values"))
}

fn from_roots(roots: &[String], run: &mut Run) -> Result<()> {
    let roots = parse_roots(roots)?;
    let params = run.timed("solve", || solve_rank6(&roots))?;
    let report = run.timed("admissibility", || admissibility_check(&params))?;
    let disc = params.discriminant_surface()?;
    let w = rank6_to_weierstrass(&params)?;
    let class = classify_rationality(&w.short_a, &w.short_b)?;
    let ints = |v: &[Int]| Value::Array(v.iter().map(wire::int).collect());
    let out = json!({
        "kind": "rank6-family",
        "roots": ints(&params.roots),
        "parameters": {
            "R": ints(&params.r),
            "a": wire::int(&params.a),
            "b": wire::int(&params.b),
            "c": wire::int(&params.c),
            "A": wire::int(&params.big_a),
            "B": wire::int(&params.big_b),
            "C": wire::int(&params.big_c),
            "D": wire::int(&params.big_d),
        },
        "surfaces": {
            "discriminant": wire::surface(&disc),
            "weierstrass": wire::surface(&w.surface),
            "short": { "A": wire::poly(&w.short_a), "B": wire::poly(&w.short_b) },
        },
        "admissibility": {
            "t1": wire::int(&report.t1),
            "t2": wire::int(&report.t2),
            "D(t1)": wire::int(&report.d_t1),
            "D(t2)": wire::int(&report.d_t2),
            "bad_primes": ints(&report.bad_primes),
            "unfactored": ints(&report.unfactored),
            "admissible": report.admissible,
        },
        "rationality": rationality(class),
    });
    run.json("construct.json", &out);
    if !report.admissible {
        run.fail("D(t1) D(t2) = 0: the roots are not admissible");
    }
    Ok(())
}

fn from_catalog(name: &str, run: &mut Run) -> Result<()> {
    let e = run.timed("load", || catalog_entry(name))?;
    let (a, b) = e.surface.short_form();
    let class = classify_rationality(&a, &b)?;
    let out = json!({
        "kind": "catalog",
        "name": e.name,
        "description": e.description,
        "claimed_rank": e.claimed_rank,
        "default_t0": e.default_t0.as_ref().map(wire::rat),
        "reference_det": e.reference_det.map(wire::float),
        "surface": wire::surface(&e.surface),
        "points": e.points.iter().map(wire::section).collect::<Vec<_>>(),
        "rationality": rationality(class),
    });
    run.json("construct.json", &out);
    Ok(())
}

pub fn run(args: &ConstructArgs, run: &mut Run) -> Result<()> {
    match (&args.roots, &args.catalog) {
        (Some(roots), _) => from_roots(roots, run),
        (None, Some(name)) => from_catalog(name, run),
        (None, None) => unreachable!("clap requires one input"),
    }
}
