//! Birational maps from quartic models y^2 = quartic(x) to Weierstrass cubics.

use std::cmp::Ordering;

use crate::arith::{rat_sqrt, PolyQ, Rat};
use crate::error::{Error, Result};
use crate::mordell_weil::CurvePoint;

use super::weierstrass::WeierstrassQ;

/// A point on y^2 = quartic(x). When the leading coefficient is a square
/// a^2 there are two points at infinity, where y / x^2 tends to +a or -a.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuarticPoint {
    Affine { x: Rat, y: Rat },
    InfinityPlus,
    InfinityMinus,
}

impl QuarticPoint {
    pub fn affine(x: Rat, y: Rat) -> Self {
        QuarticPoint::Affine { x, y }
    }
}

/// Coefficients `[e, d, c, b, a]` of a x^4 + b x^3 + c x^2 + d x + e.
pub type QuarticCoeffs = [Rat; 5];

pub fn quartic_contains(q: &QuarticCoeffs, x: &Rat, y: &Rat) -> bool {
    PolyQ::new(q.to_vec()).eval(x) == Rat::from(y.square_ref())
}

#[derive(Clone, Debug, PartialEq)]
enum MapKind {
    /// y^2 = x^4 - 6c x^2 + 4d x + e; target y'^2 = x^3 - g2/4 x - g3/4.
    Depressed { c: Rat, d: Rat },
    /// v^2 = a u^4 + b u^3 + c u^2 + d u + q^2.
    SquareConstant { c: Rat, d: Rat, q: Rat, a1: Rat, a2: Rat, a3: Rat },
}

/// Forward and inverse maps between a quartic model and its cubic.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMap {
    kind: MapKind,
    source: QuarticCoeffs,
    target: WeierstrassQ,
}

impl PointMap {
    pub fn source(&self) -> &QuarticCoeffs {
        &self.source
    }

    pub fn target(&self) -> &WeierstrassQ {
        &self.target
    }

    /// Points of the cubic with no preimage under [`Self::inverse`].
    pub fn inverse_exclusions(&self) -> Vec<CurvePoint> {
        match &self.kind {
            MapKind::Depressed { .. } => Vec::new(),
            MapKind::SquareConstant { .. } => {
                let t = &self.target;
                let cubic = PolyQ::new(vec![t.a6().clone(), t.a4().clone(), t.a2().clone(), Rat::from(1)]);
                cubic
                    .rational_roots()
                    .unwrap_or_default()
                    .into_iter()
                    .map(|x| CurvePoint::affine(x, Rat::new()))
                    .collect()
            }
        }
    }

    pub fn forward(&self, p: &QuarticPoint) -> Result<CurvePoint> {
        if let QuarticPoint::Affine { x, y } = p {
            if !quartic_contains(&self.source, x, y) {
                return Err(Error::NotOnCurve(format!("({x}, {y}) on the quartic")));
            }
        }
        match &self.kind {
            MapKind::Depressed { c, d } => Ok(match p {
                QuarticPoint::InfinityPlus => CurvePoint::Infinity,
                QuarticPoint::InfinityMinus => CurvePoint::affine(c.clone(), Rat::from(-d) / 2u32),
                QuarticPoint::Affine { x, y } => {
                    let xx = (Rat::from(y + Rat::from(x.square_ref())) - c) / 2u32;
                    let yy = Rat::from(x * 2u32) * Rat::from(&xx - c) + d;
                    CurvePoint::affine(xx, yy / 2u32)
                }
            }),
            MapKind::SquareConstant { c, d, q, a1, a2, a3 } => match p {
                QuarticPoint::Affine { x: u, y: v } => {
                    if u.cmp0() == Ordering::Equal {
                        return Ok(if v == q {
                            CurvePoint::Infinity
                        } else {
                            let y = Rat::from(a1 * a2) - a3;
                            CurvePoint::affine(Rat::from(-a2), y)
                        });
                    }
                    let vq = Rat::from(v + q);
                    let u2 = Rat::from(u.square_ref());
                    let u3 = Rat::from(&u2 * u);
                    let two_q = Rat::from(q * 2u32);
                    let xx = (Rat::from(&two_q * &vq) + Rat::from(d * u)) / &u2;
                    let q2 = Rat::from(q.square_ref());
                    let d2u2 = Rat::from(d.square_ref()) * &u2;
                    let yy = (Rat::from(&q2 * 4u32) * &vq
                        + Rat::from(&two_q * (Rat::from(d * u) + Rat::from(c * &u2)))
                        - d2u2 / &two_q)
                        / u3;
                    Ok(CurvePoint::affine(xx, yy))
                }
                _ => Err(Error::Exclusion("points at infinity of the quartic".into())),
            },
        }
    }

    pub fn inverse(&self, p: &CurvePoint) -> Result<QuarticPoint> {
        if !self.target.contains(p) {
            return Err(Error::NotOnCurve(format!("{p} on the cubic")));
        }
        match &self.kind {
            MapKind::Depressed { c, d } => match p {
                CurvePoint::Infinity => Ok(QuarticPoint::InfinityPlus),
                CurvePoint::Affine { x: xx, y: yh } => {
                    let yy = Rat::from(yh * 2u32);
                    let xc = Rat::from(xx - c);
                    let x = if xc.cmp0() != Ordering::Equal {
                        Rat::from(&yy - d) / (xc * 2u32)
                    } else if yy == Rat::from(-d) {
                        return Ok(QuarticPoint::InfinityMinus);
                    } else {
                        // (c, d) with d != 0: the tangent direction fixes x.
                        let e = &self.source[0];
                        (Rat::from(c.square_ref()) * 9u32 - e) / Rat::from(d * 4u32)
                    };
                    let y = Rat::from(xx * 2u32) + c - Rat::from(x.square_ref());
                    Ok(QuarticPoint::affine(x, y))
                }
            },
            MapKind::SquareConstant { c, d, q, .. } => match p {
                CurvePoint::Infinity => Ok(QuarticPoint::affine(Rat::new(), q.clone())),
                CurvePoint::Affine { x: xx, y: yy } => {
                    if yy.cmp0() == Ordering::Equal {
                        return Err(Error::Exclusion(format!("{p}: Y = 0 has no affine preimage")));
                    }
                    let two_q = Rat::from(q * 2u32);
                    let num = Rat::from(&two_q * Rat::from(xx + c)) - Rat::from(d.square_ref()) / &two_q;
                    let u = num / yy;
                    let v = Rat::from(Rat::from(&u * Rat::from(Rat::from(&u * xx) - d)) / &two_q) - q;
                    Ok(QuarticPoint::affine(u, v))
                }
            },
        }
    }
}

/// Cubic attached to y^2 = x^4 - 6c x^2 + 4d x + e.
#[derive(Clone, Debug, PartialEq)]
pub struct DepressedCubic {
    pub g2: Rat,
    pub g3: Rat,
    /// y'^2 = x^3 - (g2/4) x - g3/4, i.e. Y^2 = 4X^3 - g2 X - g3 with Y = 2y'.
    pub curve: WeierstrassQ,
    pub map: PointMap,
}

pub fn depressed_quartic_to_cubic(c: &Rat, d: &Rat, e: &Rat) -> Result<DepressedCubic> {
    let g2 = Rat::from(c.square_ref()) * 3u32 + e;
    let g3 = Rat::from(c.square_ref()) * c - Rat::from(c * e) - Rat::from(d.square_ref());
    let curve = WeierstrassQ::short(-Rat::from(&g2 / 4u32), -Rat::from(&g3 / 4u32))
        .map_err(|_| Error::Singular(format!("g2^3 - 27 g3^2 = 0 for c={c}, d={d}, e={e}")))?;
    let source = [e.clone(), Rat::from(d * 4u32), Rat::from(c * -6i32), Rat::new(), Rat::from(1)];
    let map = PointMap { kind: MapKind::Depressed { c: c.clone(), d: d.clone() }, source, target: curve.clone() };
    Ok(DepressedCubic { g2, g3, curve, map })
}

/// `[a1, a2, a3, a4, a6]` for v^2 = a u^4 + b u^3 + c u^2 + d u + q^2,
/// without checking that the cubic is nonsingular.
pub fn square_constant_coefficients(a: &Rat, b: &Rat, c: &Rat, d: &Rat, q: &Rat) -> Result<[Rat; 5]> {
    if q.cmp0() == Ordering::Equal {
        return Err(Error::Precondition("q must be nonzero".into()));
    }
    let q2 = Rat::from(q.square_ref());
    let a1 = Rat::from(d / q);
    let a2 = Rat::from(c - Rat::from(d.square_ref()) / Rat::from(&q2 * 4u32));
    let a3 = Rat::from(q * 2u32) * b;
    let a4 = Rat::from(&q2 * -4i32) * a;
    let a6 = Rat::from(&a2 * &a4);
    Ok([a1, a2, a3, a4, a6])
}

/// Cubic attached to v^2 = a u^4 + b u^3 + c u^2 + d u + q^2; (0, q) maps to
/// the identity.
pub fn square_constant_quartic_to_cubic(
    a: &Rat,
    b: &Rat,
    c: &Rat,
    d: &Rat,
    q: &Rat,
) -> Result<(WeierstrassQ, PointMap)> {
    if q.cmp0() == Ordering::Equal {
        return Err(Error::Precondition("q must be nonzero".into()));
    }
    let coeffs = square_constant_coefficients(a, b, c, d, q)?;
    let [a1, a2, a3, _, _] = coeffs.clone();
    let curve = WeierstrassQ::new(coeffs)?;
    let q2 = Rat::from(q.square_ref());
    let source = [q2, d.clone(), c.clone(), b.clone(), a.clone()];
    let map = PointMap {
        kind: MapKind::SquareConstant { c: c.clone(), d: d.clone(), q: q.clone(), a1, a2, a3 },
        source,
        target: curve.clone(),
    };
    Ok((curve, map))
}

/// Result of x -> x / α, y -> y / α on a quartic with leading coefficient α^2.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedQuartic {
    pub alpha: Rat,
    /// Monic quartic `[e α^2, d α, c, b / α, 1]`.
    pub coeffs: QuarticCoeffs,
}

impl NormalizedQuartic {
    pub fn map_point(&self, x: &Rat, y: &Rat) -> (Rat, Rat) {
        (Rat::from(x * &self.alpha), Rat::from(y * &self.alpha))
    }
}

/// Makes the quartic monic using α = +sqrt(leading coefficient).
pub fn leading_square_normalize(q: &QuarticCoeffs) -> Result<NormalizedQuartic> {
    let lead = &q[4];
    let alpha = match rat_sqrt(lead) {
        Some(a) if a.cmp0() != Ordering::Equal => a,
        _ => return Err(Error::CannotNormalize(format!("leading coefficient {lead} is not a nonzero square"))),
    };
    normalize_with(q, alpha)
}

/// As [`leading_square_normalize`] with a caller-chosen square root α
/// (either sign).
pub fn normalize_with(q: &QuarticCoeffs, alpha: Rat) -> Result<NormalizedQuartic> {
    if Rat::from(alpha.square_ref()) != q[4] || alpha.cmp0() == Ordering::Equal {
        return Err(Error::CannotNormalize(format!("{alpha}^2 is not the leading coefficient {}", q[4])));
    }
    let [e, d, c, b, _] = q;
    let coeffs = [
        Rat::from(e * Rat::from(alpha.square_ref())),
        Rat::from(d * &alpha),
        c.clone(),
        Rat::from(b / &alpha),
        Rat::from(1),
    ];
    Ok(NormalizedQuartic { alpha, coeffs })
}

/// Square root in Q[T] of a polynomial leading coefficient, with positive
/// leading coefficient, e.g. (T + 1)^2 -> T + 1.
pub fn leading_square_root_qt(lead: &PolyQ) -> Result<PolyQ> {
    match lead.sqrt() {
        Some(r) if !r.is_zero() => Ok(r),
        _ => Err(Error::CannotNormalize(format!("{lead} is not a square in Q[T]"))),
    }
}

/// Depressed form of a monic quartic: x = z - b/4 gives z^4 - 6c z^2 + 4d z + e.
#[derive(Clone, Debug, PartialEq)]
pub struct Depression {
    pub shift: Rat,
    pub c: Rat,
    pub d: Rat,
    pub e: Rat,
}

pub fn depress_monic(q: &QuarticCoeffs) -> Result<Depression> {
    if q[4] != 1 {
        return Err(Error::Precondition("quartic must be monic".into()));
    }
    let shift = Rat::from(&q[3] / 4u32);
    // coefficients of p(z - shift)
    let p = PolyQ::new(q.to_vec());
    let sub = PolyQ::new(vec![-shift.clone(), Rat::from(1)]);
    let dep = p.compose(&sub);
    debug_assert_eq!(dep.coeff(3), Rat::new());
    Ok(Depression { c: -(dep.coeff(2) / Rat::from(6)), d: dep.coeff(1) / Rat::from(4), e: dep.coeff(0), shift })
}
