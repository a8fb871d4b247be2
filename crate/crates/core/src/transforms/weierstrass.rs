use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;

use crate::arith::{weierstrass_invariants, Int, Invariants, Rat};
use crate::error::{Error, Result};
use crate::mordell_weil::CurvePoint;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q, nonsingular.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassQ {
    a: [Rat; 5],
    inv: Invariants<Rat>,
}

impl WeierstrassQ {
    /// Coefficients in the order `[a1, a2, a3, a4, a6]`.
    pub fn new(a: [Rat; 5]) -> Result<Self> {
        let inv = weierstrass_invariants(&a);
        if inv.disc.cmp0() == Ordering::Equal {
            return Err(Error::Singular(format!("discriminant vanishes for {a:?}")));
        }
        Ok(WeierstrassQ { a, inv })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(Rat::from))
    }

    /// y^2 = x^3 + a x + b.
    pub fn short(a: Rat, b: Rat) -> Result<Self> {
        Self::new([Rat::new(), Rat::new(), Rat::new(), a, b])
    }

    pub fn coeffs(&self) -> &[Rat; 5] {
        &self.a
    }
    pub fn a1(&self) -> &Rat {
        &self.a[0]
    }
    pub fn a2(&self) -> &Rat {
        &self.a[1]
    }
    pub fn a3(&self) -> &Rat {
        &self.a[2]
    }
    pub fn a4(&self) -> &Rat {
        &self.a[3]
    }
    pub fn a6(&self) -> &Rat {
        &self.a[4]
    }
    pub fn invariants(&self) -> &Invariants<Rat> {
        &self.inv
    }
    pub fn b2(&self) -> &Rat {
        &self.inv.b2
    }
    pub fn b4(&self) -> &Rat {
        &self.inv.b4
    }
    pub fn b6(&self) -> &Rat {
        &self.inv.b6
    }
    pub fn b8(&self) -> &Rat {
        &self.inv.b8
    }
    pub fn c4(&self) -> &Rat {
        &self.inv.c4
    }
    pub fn c6(&self) -> &Rat {
        &self.inv.c6
    }
    pub fn discriminant(&self) -> &Rat {
        &self.inv.disc
    }

    pub fn j_invariant(&self) -> Rat {
        Rat::from(self.inv.c4.clone().pow(3u32)) / &self.inv.disc
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, when the model is integral.
    pub fn int_coeffs(&self) -> Option<[Int; 5]> {
        self.is_integral().then(|| std::array::from_fn(|i| self.a[i].numer().clone()))
    }

    pub fn contains_xy(&self, x: &Rat, y: &Rat) -> bool {
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = Rat::from(y * y) + Rat::from(a1 * x) * y + Rat::from(a3 * y);
        let rhs = ((Rat::from(x + a2) * x) + a4) * x + a6;
        lhs == rhs
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.contains_xy(x, y),
        }
    }

    /// The curve in the coordinates (x', y') with x = u^2 x' + r,
    /// y = u^3 y' + s u^2 x' + t.
    pub fn transform(&self, iso: &Isomorphism) -> Result<WeierstrassQ> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let Isomorphism { u, r, s, t } = iso;
        if u.cmp0() == Ordering::Equal {
            return Err(Error::Precondition("u must be nonzero".into()));
        }
        let u2 = Rat::from(u.square_ref());
        let u3 = Rat::from(&u2 * u);
        let u4 = Rat::from(u2.square_ref());
        let u6 = Rat::from(u3.square_ref());
        let r2 = Rat::from(r.square_ref());
        let n1 = Rat::from(a1 + Rat::from(s * 2u32));
        let n2 = Rat::from(a2 - Rat::from(s * a1)) + Rat::from(r * 3u32) - Rat::from(s.square_ref());
        let n3 = Rat::from(a3 + Rat::from(r * a1)) + Rat::from(t * 2u32);
        let n4 = Rat::from(a4 - Rat::from(s * a3)) + Rat::from(r * a2) * 2u32 - Rat::from(t + Rat::from(r * s)) * a1
            + Rat::from(&r2 * 3u32)
            - Rat::from(s * t) * 2u32;
        let n6 = Rat::from(a6 + Rat::from(r * a4)) + Rat::from(&r2 * a2) + Rat::from(&r2 * r)
            - Rat::from(t * a3)
            - Rat::from(t.square_ref())
            - Rat::from(r * t) * a1;
        WeierstrassQ::new([n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6])
    }

    /// Isomorphic short model y^2 = x^3 - 27 c4 x - 54 c6 (u = 1/6).
    pub fn short_model(&self) -> Result<(WeierstrassQ, Isomorphism)> {
        let s = Rat::from(-self.a1()) / 2u32;
        let r = Rat::from(-self.b2()) / 12u32;
        let t = -(Rat::from(self.a3() + Rat::from(&r * self.a1()))) / 2u32;
        let iso = Isomorphism { u: Rat::from((1, 6)), r, s, t };
        Ok((self.transform(&iso)?, iso))
    }
}

impl fmt::Display for WeierstrassQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1}, {a2}, {a3}, {a4}, {a6}]")
    }
}

/// Change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isomorphism {
    pub u: Rat,
    pub r: Rat,
    pub s: Rat,
    pub t: Rat,
}

impl Isomorphism {
    pub fn identity() -> Self {
        Isomorphism { u: Rat::from(1), r: Rat::new(), s: Rat::new(), t: Rat::new() }
    }

    pub fn scaling(u: Rat) -> Self {
        Isomorphism { u, ..Self::identity() }
    }

    /// Old coordinates to new.
    pub fn map_point(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u2 = Rat::from(self.u.square_ref());
                let u3 = Rat::from(&u2 * &self.u);
                let xr = Rat::from(x - &self.r);
                let ny = (Rat::from(y - Rat::from(&self.s * &xr)) - &self.t) / u3;
                CurvePoint::Affine { x: xr / u2, y: ny }
            }
        }
    }

    /// New coordinates back to old.
    pub fn unmap_point(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u2 = Rat::from(self.u.square_ref());
                let u3 = Rat::from(&u2 * &self.u);
                let u2x = Rat::from(&u2 * x);
                let ox = Rat::from(&u2x + &self.r);
                let oy = Rat::from(&u3 * y) + Rat::from(&self.s * &u2x) + &self.t;
                CurvePoint::Affine { x: ox, y: oy }
            }
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isomorphism) -> Isomorphism {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&next.u, &next.r, &next.s, &next.t);
        let u1sq = Rat::from(u1.square_ref());
        Isomorphism {
            u: Rat::from(u1 * u2),
            r: Rat::from(&u1sq * r2) + r1,
            s: Rat::from(u1 * s2) + s1,
            t: Rat::from(&u1sq * u1) * t2 + Rat::from(s1 * &u1sq) * r2 + t1,
        }
    }
}
