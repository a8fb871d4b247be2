use ellsurf::arith::{jacobi_u64, rat, Int, Rat};
use ellsurf::construction::catalog;
use ellsurf::legendre::{factorizable_sum, quadratic_sum_total};
use ellsurf::mordell_weil::{count_points_mod_p, gram, CurvePoint};
use ellsurf::transforms::{
    depressed_quartic_to_cubic, minimal_model, quartic_contains, specialize, square_constant_quartic_to_cubic,
    Isomorphism, PointMap, QuarticPoint, WeierstrassQ,
};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rat {
    rat(n, d)
}

fn pt(x: Rat, y: Rat) -> CurvePoint {
    CurvePoint::affine(x, y)
}

fn brute_quadratic(a: u64, b: u64, c: u64, p: u64) -> i64 {
    (0..p).map(|t| i64::from(jacobi_u64((a * t % p * t + b * t + c) % p, p))).sum()
}

#[test]
fn quadratic_sums_exhaustive() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let got = quadratic_sum_total(&Int::from(a), &Int::from(b), &Int::from(c), p).unwrap().value;
                    assert_eq!(got, brute_quadratic(a, b, c, p), "p={p} ({a},{b},{c})");
                }
            }
        }
    }
}

#[test]
fn factorizable_sums_exhaustive() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97] {
        for n1 in 0..p {
            for n2 in 0..p {
                let want: i64 =
                    (0..p).map(|x| i64::from(jacobi_u64((n1 + x) % p, p) * jacobi_u64((n2 + x) % p, p))).sum();
                assert_eq!(factorizable_sum(&Int::from(n1), &Int::from(n2), p).unwrap(), want);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadratic_sums_sampled(pi in 0usize..25, a in 0u64..200, b in 0u64..200, c in 0u64..200, neg in any::<bool>()) {
        let primes = [101u64, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 41, 43, 47, 53];
        let p = primes[pi];
        let ai = if neg { -Int::from(a) } else { Int::from(a) };
        let got = quadratic_sum_total(&ai, &Int::from(b), &Int::from(c), p).unwrap().value;
        let ar = if neg { (p - a % p) % p } else { a % p };
        prop_assert_eq!(got, brute_quadratic(ar, b % p, c % p, p));
    }
}

fn curve_389a() -> (WeierstrassQ, [CurvePoint; 2]) {
    let e = WeierstrassQ::from_ints([0, 1, 1, -2, 0]).unwrap();
    (e, [pt(q(-1, 1), q(1, 1)), pt(q(0, 1), q(0, 1))])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn group_law_axioms(c in prop::array::uniform6(-3i64..=3)) {
        let (e, g) = curve_389a();
        let p = e.linear_combination(&g, &c[0..2]);
        let r = e.linear_combination(&g, &c[2..4]);
        let s = e.linear_combination(&g, &c[4..6]);
        prop_assert!(e.contains(&p));
        prop_assert_eq!(e.add(&e.add(&p, &r), &s), e.add(&p, &e.add(&r, &s)));
        prop_assert_eq!(e.add(&p, &r), e.add(&r, &p));
        prop_assert!(e.add(&p, &e.neg(&p)).is_infinity());
        prop_assert_eq!(e.add(&p, &CurvePoint::Infinity), p.clone());
    }
}

fn small_q() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn check_round_trip(map: &PointMap, start: &QuarticPoint) -> Result<(), TestCaseError> {
    let target = map.target();
    let base = map.forward(start).unwrap();
    prop_assert!(target.contains(&base));
    let excluded = map.inverse_exclusions();
    for k in -4i64..=4 {
        let pk = target.mul(&base, k);
        if pk.is_infinity() || excluded.contains(&pk) {
            continue;
        }
        let back = map.inverse(&pk).unwrap();
        if let QuarticPoint::Affine { x, y } = &back {
            prop_assert!(quartic_contains(map.source(), x, y));
        }
        prop_assert_eq!(map.forward(&back).unwrap(), pk);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn depressed_map_round_trip(c in small_q(), d in small_q(), x0 in small_q(), y0 in small_q()) {
        // Choose e so that (x0, y0) lies on x^4 - 6c x^2 + 4d x + e.
        let x2 = Rat::from(x0.square_ref());
        let e = Rat::from(y0.square_ref()) - Rat::from(x2.square_ref()) + Rat::from(&c * &x2) * 6u32 - Rat::from(&d * &x0) * 4u32;
        let Ok(cubic) = depressed_quartic_to_cubic(&c, &d, &e) else { return Ok(()) };
        check_round_trip(&cubic.map, &QuarticPoint::affine(x0, y0))?;
    }

    #[test]
    fn square_constant_map_round_trip(a in small_q(), b in small_q(), c in small_q(), u0 in small_q(), v0 in small_q()) {
        prop_assume!(u0.cmp0() != std::cmp::Ordering::Equal);
        // Choose d so that (u0, v0) lies on a u^4 + b u^3 + c u^2 + d u + 1.
        let u2 = Rat::from(u0.square_ref());
        let rest = Rat::from(&a * &u2) * &u2 + Rat::from(&b * &u2) * &u0 + Rat::from(&c * &u2) + 1u32;
        let d = (Rat::from(v0.square_ref()) - rest) / &u0;
        let Ok((_, map)) = square_constant_quartic_to_cubic(&a, &b, &c, &d, &Rat::from(1)) else { return Ok(()) };
        check_round_trip(&map, &QuarticPoint::affine(u0, v0))?;
    }

    #[test]
    fn isomorphism_round_trip(u in small_q(), r in small_q(), s in small_q(), t in small_q(), k in -5i64..=5) {
        prop_assume!(u.cmp0() != std::cmp::Ordering::Equal);
        let (e, g) = curve_389a();
        let iso = Isomorphism { u, r, s, t };
        let e2 = e.transform(&iso).unwrap();
        let p = e.mul(&g[0], k);
        let image = iso.map_point(&p);
        prop_assert!(e2.contains(&image));
        prop_assert_eq!(iso.unmap_point(&image), p);
        prop_assert_eq!(e2.j_invariant(), e.j_invariant());
    }

    #[test]
    fn minimal_model_is_canonical(u in 1i64..=6, r in -9i64..=9, s in -3i64..=3, t in -9i64..=9, idx in 0usize..4) {
        let bases = [[0, 1, 1, -2, 0], [0, 0, 1, -1, 0], [1, 0, 0, -12, 9], [0, 0, 0, 3, 11]];
        let e = WeierstrassQ::from_ints(bases[idx]).unwrap();
        let (m0, _) = minimal_model(&e).unwrap();
        let iso = Isomorphism { u: q(1, u), r: Rat::from(r), s: Rat::from(s), t: Rat::from(t) };
        let scaled = e.transform(&iso).unwrap();
        prop_assert!(scaled.is_integral());
        let (m, to_min) = minimal_model(&scaled).unwrap();
        prop_assert!(m.is_integral());
        prop_assert_eq!(m.discriminant(), m0.discriminant());
        prop_assert_eq!(m.j_invariant(), e.j_invariant());
        prop_assert_eq!(scaled.transform(&to_min).unwrap(), m.clone());
        let a = m.coeffs();
        for (i, lo, hi) in [(0usize, 0, 1), (1, -1, 1), (2, 0, 1)] {
            prop_assert!(a[i] >= lo && a[i] <= hi, "a{} = {}", i, a[i]);
        }
    }

    #[test]
    fn specialize_preserves_membership(idx in 0usize..4, t0 in -12i64..=12) {
        let entry = &catalog().unwrap()[idx];
        let Ok(fiber) = specialize(&entry.surface, &Rat::from(t0)) else { return Ok(()) };
        for p in &entry.points {
            let image = fiber.map_point(p).unwrap();
            prop_assert!(fiber.curve.contains(&image), "{} t0={} {}", entry.name, t0, image);
            if let Ok(back) = fiber.unmap_point(&image) {
                prop_assert_eq!(back, p.eval(&Rat::from(t0)));
            }
        }
    }

    #[test]
    fn hasse_bound(a in -50i64..=50, b in -50i64..=50, pi in 0usize..8) {
        let p = [5u64, 7, 11, 13, 17, 19, 23, 101][pi];
        let Ok(e) = WeierstrassQ::from_ints([0, 0, 0, a, b]) else { return Ok(()) };
        if let Ok(n) = count_points_mod_p(&e, p) {
            let trace = (p + 1) as f64 - n as f64;
            prop_assert!(trace.abs() <= 2.0 * (p as f64).sqrt());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gram_invariant_under_unimodular_change(steps in prop::collection::vec((any::<bool>(), -2i64..=2), 1..4)) {
        let (e, g) = curve_389a();
        let mut m = [[1i64, 0], [0, 1]];
        for (swap, k) in steps {
            if swap {
                m.swap(0, 1);
            }
            m[0][0] += k * m[1][0];
            m[0][1] += k * m[1][1];
        }
        let new: Vec<CurvePoint> = m.iter().map(|row| e.linear_combination(&g, row)).collect();
        let d0 = gram(&e, &g, 128).unwrap().det;
        let d1 = gram(&e, &new, 128).unwrap().det;
        prop_assert!((d0 - d1).abs() < 1e-12 * d0.abs().max(1.0), "{d0} vs {d1}");
    }
}
