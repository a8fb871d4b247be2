use anyhow::{bail, Result};
use clap::{ArgGroup, Args, ValueEnum};
use ellsurf::analytic::{
    max_abs_deviation, nagao_sums, rank6_exact_certificate, supported_primes, BadFiber, Certificate, KERNEL_PRIME_BOUND,
};
use ellsurf::arith::Int;
use ellsurf::construction::{admissibility_check, rank6_to_weierstrass, solve_rank6, Rank6Params, SurfaceQT};
use serde_json::{json, Value};

use crate::construct::parse_roots;
use crate::wire;
use crate::Run;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Form {
    Discriminant,
    Weierstrass,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BadFiberArg {
    Zero,
    Raw,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["curve", "roots"])))]
pub struct NagaoArgs {
    /// Catalog name or curve JSON file.
    #[arg(long, value_name = "NAME|FILE")]
    pub curve: Option<String>,
    /// Rank 6 family from six roots ρ.
    #[arg(long, num_args = 6, value_name = "RHO", allow_negative_numbers = true)]
    pub roots: Option<Vec<String>>,
    /// Which model of the rank 6 family to sum over.
    #[arg(long, value_enum, default_value = "discriminant", requires = "roots")]
    pub form: Form,
    #[arg(long, value_name = "N")]
    pub pmax: u64,
    /// Rank r in the expected value -p A_E(p) = r p.
    #[arg(long, value_name = "R")]
    pub expected_rank: Option<u64>,
    /// Contribution of fibers with p | Δ(t) (default: zero for Weierstrass models, raw otherwise).
    #[arg(long, value_enum)]
    pub bad_fiber: Option<BadFiberArg>,
    /// Also run the line-by-line certificate of -p A_E(p) = 6p (needs --roots).
    #[arg(long)]
    pub exact_certificate: bool,
}

fn certificate_summary(params: &Rank6Params, pmax: u64, run: &mut Run) -> Result<Value> {
    let primes: Vec<u64> = ellsurf::arith::odd_primes_up_to(pmax).into_iter().filter(|&p| p >= 5).collect();
    let certs = run.timed("certificate", || {
        primes.iter().map(|&p| rank6_exact_certificate(params, p)).collect::<ellsurf::Result<Vec<_>>>()
    })?;
    let passed = certs.iter().filter(|c| c.passed()).count();
    let failed: Vec<u64> = certs.iter().filter(|c| matches!(c, Certificate::Failed(_))).map(Certificate::p).collect();
    let skipped: Vec<Value> = certs
        .iter()
        .filter_map(|c| match c {
            Certificate::Skipped { p, reason } => Some(json!({ "p": p, "reason": reason })),
            _ => None,
        })
        .collect();
    if !failed.is_empty() {
        run.fail(format!("certificate failed at p = {failed:?}"));
    }
    let rate = if primes.is_empty() { 0.0 } else { passed as f64 / primes.len() as f64 };
    Ok(json!({
        "primes": primes.len(),
        "passed": passed,
        "failed": failed,
        "skipped": skipped,
        "pass_rate": wire::float(rate),
    }))
}

pub fn run(args: &NagaoArgs, run: &mut Run) -> Result<()> {
    if args.pmax >= KERNEL_PRIME_BOUND {
        bail!("--pmax must be below {KERNEL_PRIME_BOUND}");
    }
    if args.exact_certificate && args.roots.is_none() {
        bail!("--exact-certificate needs --roots");
    }
    let mut params = None;
    let (surface, label, default_rank): (SurfaceQT, String, Option<u64>) = match (&args.roots, &args.curve) {
        (Some(roots), _) => {
            let p = solve_rank6(&parse_roots(roots)?)?;
            let s = match args.form {
                Form::Discriminant => p.discriminant_surface()?,
                Form::Weierstrass => rank6_to_weierstrass(&p)?.surface,
            };
            params = Some(p);
            (s, format!("rank6 roots {}", roots.join(" ")), Some(6))
        }
        (None, Some(spec)) => {
            let src = wire::load_source(spec)?;
            (src.surface, src.label, src.claimed_rank.map(|r| r as u64))
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let conv = match args.bad_fiber {
        Some(BadFiberArg::Zero) => BadFiber::Zero,
        Some(BadFiberArg::Raw) => BadFiber::Raw,
        None => BadFiber::default_for(&surface),
    };
    let expected_rank = args.expected_rank.or(default_rank);
    let primes = supported_primes(&surface, args.pmax);
    let records = run.timed("nagao", || nagao_sums(&surface, &primes, conv, expected_rank))?;

    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["p", "ae_numerator", "minus_p_ae", "expected", "deviation"])?;
    for r in &records {
        let opt = |v: &Option<Int>| v.as_ref().map(Int::to_string).unwrap_or_default();
        csv.write_record([
            r.p.to_string(),
            r.a_e.numer().to_string(),
            r.minus_p_a.to_string(),
            opt(&r.expected),
            opt(&r.deviation),
        ])?;
    }
    let csv_bytes = csv.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?;
    run.outputs.push(crate::Output { name: "nagao.csv".into(), bytes: csv_bytes });

    let weighted: f64 = records.iter().map(|r| -r.a_e.to_f64() * (r.p as f64).ln()).sum();
    let rosen_silverman = if args.pmax == 0 { 0.0 } else { weighted / args.pmax as f64 };
    let mut summary = json!({
        "curve": label,
        "pmax": args.pmax,
        "bad_fiber": format!("{conv:?}").to_lowercase(),
        "primes": records.len(),
        "expected_rank": expected_rank,
        "max_abs_deviation": max_abs_deviation(&records).map(|d| wire::int(&d)),
        "rosen_silverman": wire::float(rosen_silverman),
    });
    if let Some(p) = &params {
        // Deviation over primes clear of the admissibility bad set.
        let bad = admissibility_check(p)?.bad_primes;
        let good: Vec<_> = records.iter().filter(|r| r.p >= 5 && !bad.iter().any(|b| *b == r.p)).cloned().collect();
        summary["max_abs_deviation_good_primes"] = json!(max_abs_deviation(&good).map(|d| wire::int(&d)));
        summary["good_primes"] = json!(good.len());
        if args.exact_certificate {
            summary["certificate"] = certificate_summary(p, args.pmax, run)?;
        }
    }
    run.json("nagao-summary.json", &summary);
    Ok(())
}
