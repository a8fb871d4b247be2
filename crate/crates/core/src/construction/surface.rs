use std::fmt;

use crate::arith::{quartic_invariants, weierstrass_invariants, BiPolyQ, PolyQ, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceForm {
    /// y^2 = f(x, T) with f of degree 3 or 4 in x.
    Discriminant(BiPolyQ),
    /// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, coefficients `[a1, a2, a3, a4, a6]`.
    Weierstrass([PolyQ; 5]),
}

/// An elliptic curve over Q(T).
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceQT {
    pub form: SurfaceForm,
    /// Short label naming the construction the surface came from.
    pub provenance: String,
}

/// A rational point on a curve over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

/// A section with coordinates in Q[T].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPointQT {
    pub x: PolyQ,
    pub y: PolyQ,
}

impl RatPointQT {
    pub fn new(x: PolyQ, y: PolyQ) -> Self {
        RatPointQT { x, y }
    }

    /// A section whose x-coordinate does not depend on T.
    pub fn with_constant_x(x: Rat, y: PolyQ) -> Self {
        RatPointQT { x: PolyQ::constant(x), y }
    }

    pub fn eval(&self, t: &Rat) -> RatPoint {
        RatPoint { x: self.x.eval(t), y: self.y.eval(t) }
    }
}

impl fmt::Display for RatPointQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl SurfaceQT {
    pub fn discriminant_form(f: BiPolyQ, provenance: impl Into<String>) -> Result<Self> {
        match f.deg_x() {
            Some(3) | Some(4) => {}
            d => return Err(Error::Shape(format!("y^2 = f(x, T) needs f of degree 3 or 4 in x, got {d:?}"))),
        }
        let s = SurfaceQT { form: SurfaceForm::Discriminant(f), provenance: provenance.into() };
        if s.discriminant().is_zero() {
            return Err(Error::Singular("discriminant vanishes identically in T".into()));
        }
        Ok(s)
    }

    pub fn weierstrass(a: [PolyQ; 5], provenance: impl Into<String>) -> Result<Self> {
        let s = SurfaceQT { form: SurfaceForm::Weierstrass(a), provenance: provenance.into() };
        if s.discriminant().is_zero() {
            return Err(Error::Singular("discriminant vanishes identically in T".into()));
        }
        Ok(s)
    }

    /// Long Weierstrass coefficients of a model over Q(T). For the
    /// discriminant form this is the Jacobian Y^2 = X^3 - 27 I X - 27 J.
    pub fn jacobian_model(&self) -> [PolyQ; 5] {
        match &self.form {
            SurfaceForm::Weierstrass(a) => a.clone(),
            SurfaceForm::Discriminant(f) => {
                let q: [PolyQ; 5] = std::array::from_fn(|i| f.row(i));
                let (i, j) = quartic_invariants(&q);
                let m27 = Rat::from(-27);
                [PolyQ::zero(), PolyQ::zero(), PolyQ::zero(), i.scale(&m27), j.scale(&m27)]
            }
        }
    }

    /// (A, B) with y^2 = x^3 + A x + B isomorphic to [`Self::jacobian_model`]
    /// over Q(T): A = -27 c4, B = -54 c6.
    pub fn short_form(&self) -> (PolyQ, PolyQ) {
        let inv = weierstrass_invariants(&self.jacobian_model());
        (inv.c4.scale(&Rat::from(-27)), inv.c6.scale(&Rat::from(-54)))
    }

    /// Discriminant in T of [`Self::jacobian_model`].
    pub fn discriminant(&self) -> PolyQ {
        weierstrass_invariants(&self.jacobian_model()).disc
    }

    /// Whether a section satisfies the curve equation identically in T.
    pub fn contains(&self, p: &RatPointQT) -> bool {
        let (x, y) = (&p.x, &p.y);
        match &self.form {
            SurfaceForm::Discriminant(f) => (y * y) == f.subst_x(x),
            SurfaceForm::Weierstrass([a1, a2, a3, a4, a6]) => {
                let lhs = &(&(y * y) + &(&(a1 * x) * y)) + &(a3 * y);
                let x2 = x * x;
                let rhs = &(&(&(&x2 * x) + &(a2 * &x2)) + &(a4 * x)) + a6;
                lhs == rhs
            }
        }
    }

    /// Largest T-degree among the defining coefficients.
    pub fn deg_t(&self) -> usize {
        match &self.form {
            SurfaceForm::Discriminant(f) => f.deg_t().unwrap_or(0),
            SurfaceForm::Weierstrass(a) => a.iter().filter_map(|c| c.degree()).max().unwrap_or(0),
        }
    }
}
