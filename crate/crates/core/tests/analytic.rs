use ellsurf::analytic::*;
use ellsurf::arith::{odd_primes_up_to, PolyQ, Rat};
use ellsurf::construction::*;

fn params() -> Rank6Params {
    Rank6Params::from_i64([1, 2, 3, 4, 5, 6]).unwrap()
}

fn short(a: &[i64], b: &[i64]) -> SurfaceQT {
    let z = PolyQ::zero();
    SurfaceQT::weierstrass([z.clone(), z.clone(), z, PolyQ::from_i64s(a), PolyQ::from_i64s(b)], "test").unwrap()
}

/// Affine solutions of y^2 = x^3 + a x + b by enumerating both coordinates.
fn naive_affine(a: u64, b: u64, p: u64) -> u64 {
    let mut n = 0;
    for x in 0..p {
        let rhs = (x * x % p * x + a * x + b) % p;
        n += (0..p).filter(|y| y * y % p == rhs).count() as u64;
    }
    n
}

#[test]
fn fiber_counts_match_enumeration() {
    let s = short(&[0, 1], &[3, 0, 1]);
    for p in [5u64, 7, 11, 13] {
        for t in 0..p {
            let c = count_fiber(&s, t, p).unwrap();
            let (a, b) = (t % p, (t * t + 3) % p);
            let disc = (4 * a * a % p * a + 27 * b % p * b) % p;
            assert_eq!(c.bad, disc == 0, "p={p} t={t}");
            if !c.bad {
                assert_eq!(c.n_points, naive_affine(a, b, p) + 1, "p={p} t={t}");
                let bound = 2.0 * (p as f64).sqrt();
                assert!(c.a_t.to_f64().abs() <= bound);
            }
        }
    }
}

#[test]
fn certificate_pass_rate() {
    let p6 = params();
    let primes: Vec<u64> = odd_primes_up_to(2003).into_iter().filter(|&p| p >= 5).collect();
    let certs: Vec<Certificate> = primes.iter().map(|&p| rank6_exact_certificate(&p6, p).unwrap()).collect();
    let passed = certs.iter().filter(|c| c.passed()).count();
    assert_eq!((passed, certs.len()), (299, 302));
    assert!(certs.iter().all(|c| c.passed() || matches!(c, Certificate::Skipped { .. })));
}

#[test]
fn discriminant_form_is_exact() {
    let p6 = params();
    let s = p6.discriminant_surface().unwrap();
    let primes: Vec<u64> = supported_primes(&s, 2003).into_iter().filter(|&p| p >= 13).collect();
    let recs = nagao_sums(&s, &primes, BadFiber::Raw, Some(6)).unwrap();
    assert!(recs.len() > 290);
    assert_eq!(max_abs_deviation(&recs), Some(0.into()));
}

#[test]
fn double_sum_agrees_with_fibers() {
    let p6 = params();
    let s = p6.discriminant_surface().unwrap();
    for p in odd_primes_up_to(101).into_iter().filter(|&p| p >= 5) {
        let by_fibers = nagao_sum_by_fibers(&s, p, BadFiber::Raw).unwrap();
        let direct = nagao_sum_with(&s, p, BadFiber::Raw).unwrap();
        assert_eq!(by_fibers, direct, "p={p}");
        assert_eq!(rank6_double_sum(&p6, p).unwrap(), direct.minus_p_a, "p={p}");
    }
}

#[test]
fn weierstrass_form_deviation_is_small() {
    let p6 = params();
    let bad = admissibility_check(&p6).unwrap().bad_primes;
    let w = rank6_to_weierstrass(&p6).unwrap();
    let primes: Vec<u64> =
        supported_primes(&w.surface, 2003).into_iter().filter(|&p| p >= 5 && !bad.iter().any(|b| *b == p)).collect();
    let recs = nagao_sums(&w.surface, &primes, BadFiber::Zero, Some(6)).unwrap();
    let max = max_abs_deviation(&recs).unwrap();
    assert!(max <= 12, "max deviation {max}");
}

#[test]
fn rosen_silverman_limits() {
    let w = rank6_to_weierstrass(&params()).unwrap();
    let v = rosen_silverman_partial(&w.surface, 2000).unwrap().value;
    assert!((5.5..=6.5).contains(&v), "{v}");
    let flat = short(&[0], &[0, 1]);
    let v0 = rosen_silverman_partial(&flat, 2000).unwrap().value;
    assert!(v0.abs() < 0.5, "{v0}");
    assert_eq!(rosen_silverman_partial(&flat, 2).unwrap().value, 0.0);
}

#[test]
fn symmetric_family_vanishes() {
    let s = short(&[0, 1], &[0]);
    for p in odd_primes_up_to(200).into_iter().filter(|p| p % 4 == 3) {
        assert_eq!(nagao_sum(&s, p).unwrap().a_e, Rat::new(), "p={p}");
    }
}

#[test]
fn small_primes_are_rejected() {
    let s = short(&[0, 1], &[0]);
    assert!(nagao_sum(&s, 2).is_err());
    assert!(nagao_sum(&s, 1 << 31).is_err());
}
