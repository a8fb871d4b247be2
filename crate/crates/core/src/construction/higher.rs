//! Surfaces y^2 = A^2 T^4 + B T^3 + C T^2 + D T + E^2 whose fibers over
//! special x are perfect squares in T.

use std::cmp::Ordering;

use crate::arith::{PolyQ, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HigherDegreeReport {
    /// 8 A^4 D - 4 A^2 B C + B^3.
    pub d1: PolyQ,
    /// 64 A^6 E^2 - 16 A^4 C^2 - B^4 + 8 A^2 C B^2.
    pub d2: PolyQ,
    /// x0 with D1(x0) = D2(x0) = 0, A(x0) != 0, and the certified square root
    /// of f(x0, T) as a polynomial in T.
    pub certified: Vec<(Rat, PolyQ)>,
    /// Common roots where f(x0, T) turned out not to be a square.
    pub uncertified: Vec<Rat>,
}

fn check_deg(p: &PolyQ, bound: usize, name: &str) -> Result<()> {
    match p.degree() {
        Some(d) if d > bound => Err(Error::Shape(format!("deg {name} = {d} exceeds {bound}"))),
        _ => Ok(()),
    }
}

/// f(x0, T) as a polynomial in T.
pub fn fiber_in_t(a: &PolyQ, b: &PolyQ, c: &PolyQ, d: &PolyQ, e: &PolyQ, x0: &Rat) -> PolyQ {
    let av = a.eval(x0);
    let ev = e.eval(x0);
    PolyQ::new(vec![Rat::from(ev.square_ref()), d.eval(x0), c.eval(x0), b.eval(x0), Rat::from(av.square_ref())])
}

pub fn higher_degree_d1_d2(a: &PolyQ, b: &PolyQ, c: &PolyQ, d: &PolyQ, e: &PolyQ) -> Result<HigherDegreeReport> {
    check_deg(a, 2, "A")?;
    check_deg(e, 2, "E")?;
    check_deg(b, 4, "B")?;
    check_deg(c, 4, "C")?;
    check_deg(d, 4, "D")?;
    let k = |v: i64| Rat::from(v);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let b2 = b * b;
    let d1 = &(&(&a4 * d).scale(&k(8)) - &(&(&a2 * b) * c).scale(&k(4))) + &(&b2 * b);
    let d2 = &(&(&(&(&a4 * &a2) * &(e * e)).scale(&k(64)) - &(&a4 * &(c * c)).scale(&k(16))) - &(&b2 * &b2))
        + &(&(&a2 * c) * &b2).scale(&k(8));
    debug_assert!(d1.degree().is_none_or(|n| n <= 12));
    debug_assert!(d2.degree().is_none_or(|n| n <= 16));

    let candidates = match (d1.is_zero(), d2.is_zero()) {
        (true, true) => Vec::new(),
        (true, false) => d2.rational_roots()?,
        (false, true) => d1.rational_roots()?,
        (false, false) => {
            let g = d1.gcd(&d2);
            if g.degree() == Some(0) {
                Vec::new()
            } else {
                g.rational_roots()?
            }
        }
    };
    let mut certified = Vec::new();
    let mut uncertified = Vec::new();
    for x0 in candidates {
        if a.eval(&x0).cmp0() == Ordering::Equal {
            continue;
        }
        let f = fiber_in_t(a, b, c, d, e, &x0);
        match f.sqrt() {
            Some(r) => certified.push((x0, r)),
            None => uncertified.push(x0),
        }
    }
    Ok(HigherDegreeReport { d1, d2, certified, uncertified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> PolyQ {
        PolyQ::from_i64s(v)
    }

    #[test]
    fn odd_terms_vanish() {
        let (a, c, e) = (p(&[1, 1]), p(&[2, 0, 1]), p(&[3, 0, 1]));
        let r = higher_degree_d1_d2(&a, &PolyQ::zero(), &c, &PolyQ::zero(), &e).unwrap();
        assert!(r.d1.is_zero());
        let a4 = a.pow(4);
        let want = (&a4 * &(&(&(&a * &a) * &(&e * &e)).scale(&Rat::from(4)) - &(&c * &c))).scale(&Rat::from(16));
        assert_eq!(r.d2, want);
    }

    #[test]
    fn non_square_constant_fiber() {
        let one = p(&[1]);
        let r = higher_degree_d1_d2(&one, &PolyQ::zero(), &PolyQ::zero(), &PolyQ::zero(), &one).unwrap();
        assert!(r.d1.is_zero());
        assert_eq!(r.d2, p(&[64]));
        assert!(r.certified.is_empty());
    }

    #[test]
    fn degree_bounds_enforced() {
        let big = p(&[0, 0, 0, 1]);
        let one = p(&[1]);
        assert!(matches!(higher_degree_d1_d2(&big, &one, &one, &one, &one), Err(Error::Shape(_))));
    }
}
