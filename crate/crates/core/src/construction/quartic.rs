//! Quartic-in-x and biquadratic-in-T variants: the x^4 T^2 family and the
//! surfaces y^2 = A(x) T^4 + B(x) T^2 + C(x).

use std::cmp::Ordering;

use rug::ops::Pow;

use crate::arith::{rat_sqrt, Int, PolyQ, PolyZ, Rat};
use crate::error::{Error, Result};

use super::surface::RatPointQT;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticVariantReport {
    /// D_T(x) = g^2 + x^4 h.
    pub d_t: PolyZ,
    /// Whether D_T = k (γ^2 x - ρ_1) ... (γ^2 x - ρ_7) with distinct nonzero integers ρ_i.
    pub factors: bool,
    /// The ρ_i when `factors` holds, sorted.
    pub rhos: Vec<Int>,
    pub constant: Option<Rat>,
}

/// Checks the degree 7 factorization behind y^2 = x^4 T^2 + 2 g(x) T - h(x).
///
/// `g` must be monic and `h` must have x^4 coefficient -1 so that the x^4
/// coefficient of f is (T + 1)^2.
pub fn quartic_variant_check(g: &PolyZ, h: &PolyZ, gamma: &Int) -> Result<QuarticVariantReport> {
    if g.degree() != Some(4) || h.degree() != Some(4) {
        return Err(Error::Shape("g and h must be quartics".into()));
    }
    if g.coeff(4) != 1 || h.coeff(4) != -1 {
        return Err(Error::Shape("x^4 coefficient of f must be (T + 1)^2".into()));
    }
    if g.coeff(0).cmp0() == Ordering::Equal {
        return Err(Error::Precondition("g(0) must be nonzero".into()));
    }
    if gamma.cmp0() == Ordering::Equal {
        return Err(Error::Precondition("gamma must be nonzero".into()));
    }
    let d_t = &(g * g) + &(&PolyZ::monomial(Int::from(1), 4) * h);
    let mut report = QuarticVariantReport { d_t: d_t.clone(), factors: false, rhos: Vec::new(), constant: None };
    if d_t.degree() != Some(7) || d_t.coeff(0).cmp0() == Ordering::Equal {
        return Ok(report);
    }
    let dq = d_t.to_q();
    let roots = dq.rational_roots()?;
    let g2 = Rat::from(gamma.square_ref());
    let rhos: Vec<Rat> = roots.iter().map(|r| Rat::from(r * &g2)).collect();
    let distinct_simple = roots.len() == 7;
    if !distinct_simple || rhos.iter().any(|r| !r.is_integer()) {
        return Ok(report);
    }
    // k = lead(D_T) / γ^14
    let k = Rat::from(dq.leading().expect("degree 7") / Rat::from(g2.clone().pow(7)));
    report.factors = true;
    report.rhos = rhos.into_iter().map(|r| r.numer().clone()).collect();
    report.constant = Some(k);
    Ok(report)
}

/// Which vanishing produced a special point on y^2 = A T^4 + B T^2 + C.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    /// A(x0) = B(x0) = 0, C(x0) a square: y = sqrt(C).
    ConstantY,
    /// A(x0) = C(x0) = 0, B(x0) a square: y = sqrt(B) T.
    LinearY,
    /// B(x0) = C(x0) = 0, A(x0) a square: y = sqrt(A) T^2.
    QuadraticY,
    /// B^2 - 4AC vanishes at x0, A(x0) a square: y = sqrt(A) (T^2 + B/2A).
    Discriminant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecialPoint {
    pub point: RatPointQT,
    pub case: SpecialCase,
}

fn common_roots(p: &PolyQ, q: &PolyQ) -> Result<Vec<Rat>> {
    let g = p.gcd(q);
    if g.is_zero() || g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    g.rational_roots()
}

fn nonzero_square_root(v: &Rat) -> Option<Rat> {
    if v.cmp0() == Ordering::Equal {
        return None;
    }
    rat_sqrt(v)
}

/// Sections of y^2 = A(x) T^4 + B(x) T^2 + C(x) forced by the four special
/// vanishing patterns, one per x-coordinate, ordered by case then x.
pub fn quartic_special_points(a: &PolyQ, b: &PolyQ, c: &PolyQ) -> Result<Vec<SpecialPoint>> {
    let mut out: Vec<SpecialPoint> = Vec::new();
    let push = |x: Rat, y: PolyQ, case: SpecialCase, out: &mut Vec<SpecialPoint>| {
        if out.iter().all(|s| s.point.x.coeff(0) != x) {
            out.push(SpecialPoint { point: RatPointQT::with_constant_x(x, y), case });
        }
    };
    for x in common_roots(a, b)? {
        if let Some(s) = nonzero_square_root(&c.eval(&x)) {
            push(x, PolyQ::constant(s), SpecialCase::ConstantY, &mut out);
        }
    }
    for x in common_roots(a, c)? {
        if let Some(s) = nonzero_square_root(&b.eval(&x)) {
            push(x, PolyQ::monomial(s, 1), SpecialCase::LinearY, &mut out);
        }
    }
    for x in common_roots(b, c)? {
        if let Some(s) = nonzero_square_root(&a.eval(&x)) {
            push(x, PolyQ::monomial(s, 2), SpecialCase::QuadraticY, &mut out);
        }
    }
    let disc = &(b * b) - &(a * c).scale(&Rat::from(4));
    if !disc.is_zero() {
        for x in disc.rational_roots()? {
            let ax = a.eval(&x);
            if let Some(s) = nonzero_square_root(&ax) {
                let shift = Rat::from(b.eval(&x) / Rat::from(&ax * 2u32));
                let y = PolyQ::new(vec![shift, Rat::new(), Rat::from(1)]).scale(&s);
                push(x, y, SpecialCase::Discriminant, &mut out);
            }
        }
    }
    Ok(out)
}
