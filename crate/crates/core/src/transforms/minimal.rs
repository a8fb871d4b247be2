//! Global minimal models over Q by Laska-Kraus-Connell reduction.

use std::cmp::Ordering;

use rug::ops::Pow;

use crate::arith::factor::{factor, valuation};
use crate::arith::{Int, Rat};
use crate::error::{Error, Result};

use super::weierstrass::{Isomorphism, WeierstrassQ};

/// Smallest u0 > 0 with u0^i a_i integral for every coefficient a_i.
fn integral_scale(e: &WeierstrassQ) -> Result<Int> {
    let weights = [1u32, 2, 3, 4, 6];
    let mut u0 = Int::from(1);
    let mut primes: Vec<Int> = Vec::new();
    for c in e.coeffs() {
        if *c.denom() != 1 {
            primes.extend(factor(c.denom())?.into_iter().map(|(p, _)| p));
        }
    }
    primes.sort();
    primes.dedup();
    for p in primes {
        let need = e.coeffs().iter().zip(weights).map(|(c, w)| valuation(c.denom(), &p).div_ceil(w)).max().unwrap_or(0);
        u0 *= Int::from(p.pow(need));
    }
    Ok(u0)
}

fn v(n: &Int, p: &Int) -> u32 {
    valuation(n, p)
}

/// Exponent d such that the model is p^d times too large at p.
fn excess_at(c4: &Int, c6: &Int, disc: &Int, p: &Int) -> u32 {
    let mut d = (v(c4, p) / 4).min(v(c6, p) / 6).min(v(disc, p) / 12);
    if d == 0 {
        return 0;
    }
    if *p == 3 {
        if v(c6, p) == 6 * d + 2 {
            d -= 1;
        }
    } else if *p == 2 {
        loop {
            if d == 0 {
                break;
            }
            let a = Int::from(c4 >> (4 * d));
            let b = Int::from(c6 >> (6 * d));
            let b4 = b.mod_u(4);
            let a16 = a.mod_u(16);
            let b32 = b.mod_u(32);
            if b4 == 3 || (a16 == 0 && (b32 == 0 || b32 == 8)) {
                break;
            }
            d -= 1;
        }
    }
    d
}

/// Reduced integral model with the given c4, c6 (a1, a3 in {0, 1},
/// a2 in {-1, 0, 1}).
fn model_from_c4c6(c4: &Int, c6: &Int) -> Option<[Int; 5]> {
    let mut b2 = Int::from(Int::from(-c6).mod_u(12));
    if b2 > 6 {
        b2 -= 12;
    }
    let b4 = Int::from(b2.square_ref()) - c4;
    if !b4.is_divisible_u(24) {
        return None;
    }
    let b4 = b4 / 24u32;
    let b6 = -Int::from(b2.clone().pow(3)) + Int::from(&b2 * &b4) * 36u32 - c6;
    if !b6.is_divisible_u(216) {
        return None;
    }
    let b6 = b6 / 216u32;
    let a1 = Int::from(b2.mod_u(2));
    let a3 = Int::from(b6.mod_u(2));
    let a2 = Int::from(&b2 - &a1);
    let a4 = Int::from(&b4 - Int::from(&a1 * &a3));
    let a6 = Int::from(&b6 - &a3);
    if !a2.is_divisible_u(4) || !a4.is_divisible_u(2) || !a6.is_divisible_u(4) {
        return None;
    }
    Some([a1, a2 / 4u32, a3, a4 / 2u32, a6 / 4u32])
}

fn to_int(r: &Rat) -> Int {
    debug_assert!(r.is_integer());
    r.numer().clone()
}

/// Global minimal model of `e` with the change of coordinates taking `e`
/// to it (points map by [`Isomorphism::map_point`]).
pub fn minimal_model(e: &WeierstrassQ) -> Result<(WeierstrassQ, Isomorphism)> {
    let u0 = integral_scale(e)?;
    let to_integral = Isomorphism::scaling(Rat::from(Int::from(1)) / Rat::from(u0));
    let ei = e.transform(&to_integral)?;
    let c4 = to_int(ei.c4());
    let c6 = to_int(ei.c6());
    let disc = to_int(ei.discriminant());

    let g = if c4.cmp0() == Ordering::Equal { c6.clone().abs() } else { Int::from(c4.gcd_ref(&c6)) };
    let primes: Vec<Int> = factor(&g)?.into_iter().map(|(p, _)| p).collect();

    let mut ds: Vec<(Int, u32)> = primes.iter().map(|p| (p.clone(), excess_at(&c4, &c6, &disc, p))).collect();
    let build = |ds: &[(Int, u32)]| -> Option<(Int, [Int; 5])> {
        let u = ds.iter().fold(Int::from(1), |acc, (p, d)| acc * Int::from(p.pow(*d)));
        let u4 = Int::from(u.clone().pow(4));
        let u6 = Int::from(u.clone().pow(6));
        let c4m = Int::from(&c4 / &u4);
        let c6m = Int::from(&c6 / &u6);
        model_from_c4c6(&c4m, &c6m).map(|a| (u, a))
    };
    let (u, a_min) = loop {
        if let Some(found) = build(&ds) {
            break found;
        }
        // Should not happen after the Kraus checks; back off one prime at a time.
        match ds.iter_mut().find(|(_, d)| *d > 0) {
            Some(entry) => entry.1 -= 1,
            None => return Err(Error::Precondition(format!("no integral model with c4 = {c4}, c6 = {c6}"))),
        }
    };

    let target = a_min.clone().map(Rat::from);
    let uq = Rat::from(u);
    let [a1, a2, a3, _, _] = ei.coeffs();
    let [m1, m2, m3, _, _] = &target;
    let s = (Rat::from(&uq * m1) - a1) / 2u32;
    let r = (Rat::from(Rat::from(uq.square_ref()) * m2) - a2 + Rat::from(&s * a1) + Rat::from(s.square_ref())) / 3u32;
    let t = (Rat::from(Rat::from(&uq * Rat::from(uq.square_ref())) * m3) - a3 - Rat::from(&r * a1)) / 2u32;
    let step = Isomorphism { u: uq, r, s, t };
    let em = ei.transform(&step)?;
    if em.coeffs() != &target {
        return Err(Error::Precondition(format!("minimal model mismatch: {em} vs {target:?}")));
    }
    Ok((em, to_integral.then(&step)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::mordell_weil::CurvePoint;

    #[test]
    fn already_minimal() {
        let e = WeierstrassQ::from_ints([0, 0, 0, -1, 0]).unwrap();
        let (m, iso) = minimal_model(&e).unwrap();
        assert_eq!(m, e);
        assert_eq!(iso.u, 1);
    }

    #[test]
    fn scaled_model_reduces() {
        let e = WeierstrassQ::from_ints([0, 0, 0, 64, 0]).unwrap();
        let (m, iso) = minimal_model(&e).unwrap();
        assert_eq!(m, WeierstrassQ::from_ints([0, 0, 0, 4, 0]).unwrap());
        assert_eq!(iso.u, 2);
    }

    #[test]
    fn rational_model_and_points() {
        // 37a scaled by u = 1/6 and translated
        let base = WeierstrassQ::from_ints([0, 0, 1, -1, 0]).unwrap();
        let iso = Isomorphism { u: rat(1, 6), r: rat(5, 3), s: rat(-1, 2), t: rat(7, 4) };
        let e = base.transform(&iso).unwrap();
        let (m, back) = minimal_model(&e).unwrap();
        assert_eq!(m, base);
        let p = iso.map_point(&CurvePoint::affine(rat(0, 1), rat(0, 1)));
        assert!(m.contains(&back.map_point(&p)));
    }

    #[test]
    fn kraus_at_two_and_three() {
        // y^2 + xy = x^3 - x^2 - 2x - 1 (conductor 49) with u = 2, then u = 3
        let base = WeierstrassQ::from_ints([1, -1, 0, -2, -1]).unwrap();
        for u in [rat(1, 2), rat(1, 3), rat(1, 6)] {
            let e = base.transform(&Isomorphism::scaling(u)).unwrap();
            assert_eq!(minimal_model(&e).unwrap().0, base);
        }
    }
}
