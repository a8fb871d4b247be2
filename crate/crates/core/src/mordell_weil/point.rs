use std::cmp::Ordering;
use std::fmt;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::transforms::WeierstrassQ;

/// A point of E(Q) in affine coordinates, or the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rat, y: Rat },
}

impl CurvePoint {
    pub fn affine(x: Rat, y: Rat) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&Rat> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl WeierstrassQ {
    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let ny = -(Rat::from(y + Rat::from(self.a1() * x)) + self.a3());
                CurvePoint::Affine { x: x.clone(), y: ny }
            }
        }
    }

    /// Chord-and-tangent addition. Inputs are assumed to lie on the curve.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, _] = self.coeffs();
        let (lambda, nu) = if x1 != x2 {
            let lambda = Rat::from(y2 - y1) / Rat::from(x2 - x1);
            let nu = Rat::from(Rat::from(y1 * x2) - Rat::from(y2 * x1)) / Rat::from(x2 - x1);
            (lambda, nu)
        } else {
            let denom = Rat::from(y1 * 2u32) + Rat::from(a1 * x1) + a3;
            if y1 != y2 || denom.cmp0() == Ordering::Equal {
                return CurvePoint::Infinity;
            }
            let x1sq = Rat::from(x1.square_ref());
            let lambda = (Rat::from(&x1sq * 3u32) + Rat::from(a2 * x1) * 2u32 + a4 - Rat::from(a1 * y1)) / &denom;
            let nu = (-Rat::from(&x1sq * x1) + Rat::from(a4 * x1) + Rat::from(self.a6() * 2u32) - Rat::from(a3 * y1))
                / &denom;
            (lambda, nu)
        };
        let x3 = Rat::from(lambda.square_ref()) + Rat::from(a1 * &lambda) - a2 - x1 - x2;
        let y3 = -(Rat::from(Rat::from(&lambda + a1) * &x3) + &nu + a3);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    /// n P by double-and-add; negative n uses -P.
    pub fn mul(&self, p: &CurvePoint, n: i64) -> CurvePoint {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Addition that first checks both points lie on this curve.
    pub fn add_checked(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::CurveMismatch);
        }
        Ok(self.add(p, q))
    }

    /// Sum of c_i P_i.
    pub fn linear_combination(&self, points: &[CurvePoint], coeffs: &[i64]) -> CurvePoint {
        points.iter().zip(coeffs).fold(CurvePoint::Infinity, |acc, (p, &c)| self.add(&acc, &self.mul(p, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn pt(x: i64, y: i64) -> CurvePoint {
        CurvePoint::affine(Rat::from(x), Rat::from(y))
    }

    #[test]
    fn identity_and_inverse() {
        let e = WeierstrassQ::from_ints([0, 0, 1, -1, 0]).unwrap();
        let p = pt(0, 0);
        assert_eq!(e.add(&p, &CurvePoint::Infinity), p);
        assert_eq!(e.add(&p, &e.neg(&p)), CurvePoint::Infinity);
    }

    #[test]
    fn chord_on_congruent_curve() {
        let e = WeierstrassQ::from_ints([0, 0, 0, -1, 0]).unwrap();
        assert_eq!(e.add(&pt(0, 0), &pt(1, 0)), pt(-1, 0));
        assert_eq!(e.double(&pt(0, 0)), CurvePoint::Infinity);
    }

    #[test]
    fn multiples_of_37a_generator() {
        let e = WeierstrassQ::from_ints([0, 0, 1, -1, 0]).unwrap();
        let p = pt(0, 0);
        // 2P = (1, 0), 3P = (-1, -1), 5P = (1/4, -5/8)
        assert_eq!(e.mul(&p, 2), pt(1, 0));
        assert_eq!(e.mul(&p, 3), pt(-1, -1));
        assert_eq!(e.mul(&p, 5), CurvePoint::affine(rat(1, 4), rat(-5, 8)));
        assert_eq!(e.mul(&p, -3), e.neg(&pt(-1, -1)));
        for k in 1..8 {
            assert!(e.contains(&e.mul(&p, k)));
        }
    }

    #[test]
    fn mismatch_detected() {
        let e = WeierstrassQ::from_ints([0, 0, 1, -1, 0]).unwrap();
        assert_eq!(e.add_checked(&pt(0, 0), &pt(5, 5)), Err(Error::CurveMismatch));
    }
}
