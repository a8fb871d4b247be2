//! Specialization T = t0 of a surface to a Weierstrass curve over Q.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::{rat_sqrt, PolyQ, Rat};
use crate::construction::{RatPoint, RatPointQT, SurfaceForm, SurfaceQT};
use crate::error::{Error, Result};
use crate::mordell_weil::CurvePoint;

use super::quartic::{
    depress_monic, depressed_quartic_to_cubic, normalize_with, square_constant_quartic_to_cubic, PointMap,
    QuarticCoeffs, QuarticPoint,
};
use super::weierstrass::WeierstrassQ;

/// How the fiber was brought to Weierstrass form.
#[derive(Clone, Debug, PartialEq)]
pub enum Route {
    /// Coefficients evaluated directly.
    Weierstrass,
    /// y^2 = cubic in x, scaled by the leading coefficient.
    Cubic { lead: Rat },
    /// The x^4 coefficient is α(T)^2 in Q[T]; normalize, depress, then the
    /// depressed-quartic map.
    LeadingSquare { alpha: PolyQ, alpha_t0: Rat, shift: Rat },
    /// The x^0 coefficient is q(T)^2 in Q[T]; the square-constant map.
    ConstantSquare { q: PolyQ, q_t0: Rat },
    /// As `LeadingSquare`, with α found only on this fiber.
    FiberLeadingSquare { alpha_t0: Rat, shift: Rat },
    /// As `ConstantSquare`, with q found only on this fiber.
    FiberConstantSquare { q_t0: Rat },
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Weierstrass => write!(f, "weierstrass"),
            Route::Cubic { .. } => write!(f, "cubic"),
            Route::LeadingSquare { alpha, .. } => write!(f, "leading-square alpha(T) = {alpha}"),
            Route::ConstantSquare { q, .. } => write!(f, "constant-square q(T) = {q}"),
            Route::FiberLeadingSquare { alpha_t0, .. } => write!(f, "leading-square alpha = {alpha_t0}"),
            Route::FiberConstantSquare { q_t0 } => write!(f, "constant-square q = {q_t0}"),
        }
    }
}

/// A fiber E_{t0} with the maps carrying points of the surface onto it.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiber {
    pub t0: Rat,
    pub curve: WeierstrassQ,
    pub route: Route,
    /// Fiber of the original model as a quartic, when the route uses one.
    pub quartic: Option<QuarticCoeffs>,
    map: Option<PointMap>,
}

impl Fiber {
    /// Evaluates a section at t0 and carries it to [`Fiber::curve`].
    pub fn map_point(&self, p: &RatPointQT) -> Result<CurvePoint> {
        self.map_rat_point(&p.eval(&self.t0))
    }

    pub fn map_rat_point(&self, p: &RatPoint) -> Result<CurvePoint> {
        let (x, y) = (&p.x, &p.y);
        match &self.route {
            Route::Weierstrass => {
                let pt = CurvePoint::affine(x.clone(), y.clone());
                if !self.curve.contains(&pt) {
                    return Err(Error::NotOnCurve(format!("({x}, {y}) on the fiber at T = {}", self.t0)));
                }
                Ok(pt)
            }
            Route::Cubic { lead } => {
                let pt = CurvePoint::affine(Rat::from(x * lead), Rat::from(y * lead));
                if !self.curve.contains(&pt) {
                    return Err(Error::NotOnCurve(format!("({x}, {y}) on the fiber at T = {}", self.t0)));
                }
                Ok(pt)
            }
            Route::LeadingSquare { alpha_t0, shift, .. } | Route::FiberLeadingSquare { alpha_t0, shift } => {
                let z = Rat::from(x * alpha_t0) + shift;
                let w = Rat::from(y * alpha_t0);
                self.point_map()?.forward(&QuarticPoint::affine(z, w))
            }
            Route::ConstantSquare { .. } | Route::FiberConstantSquare { .. } => {
                self.point_map()?.forward(&QuarticPoint::affine(x.clone(), y.clone()))
            }
        }
    }

    /// Inverse of [`Fiber::map_rat_point`]. Points with no affine preimage
    /// give an exclusion error.
    pub fn unmap_point(&self, p: &CurvePoint) -> Result<RatPoint> {
        match &self.route {
            Route::Weierstrass | Route::Cubic { .. } => {
                let CurvePoint::Affine { x, y } = p else {
                    return Err(Error::Exclusion("the point at infinity".into()));
                };
                if !self.curve.contains(p) {
                    return Err(Error::NotOnCurve(format!("{p} on the fiber")));
                }
                if let Route::Cubic { lead } = &self.route {
                    Ok(RatPoint { x: Rat::from(x / lead), y: Rat::from(y / lead) })
                } else {
                    Ok(RatPoint { x: x.clone(), y: y.clone() })
                }
            }
            Route::LeadingSquare { alpha_t0, shift, .. } | Route::FiberLeadingSquare { alpha_t0, shift } => {
                match self.point_map()?.inverse(p)? {
                    QuarticPoint::Affine { x: z, y: w } => {
                        Ok(RatPoint { x: Rat::from(&z - shift) / alpha_t0, y: w / alpha_t0 })
                    }
                    _ => Err(Error::Exclusion(format!("{p} is a point at infinity of the quartic"))),
                }
            }
            Route::ConstantSquare { .. } | Route::FiberConstantSquare { .. } => match self.point_map()?.inverse(p)? {
                QuarticPoint::Affine { x, y } => Ok(RatPoint { x, y }),
                _ => Err(Error::Exclusion(format!("{p} is a point at infinity of the quartic"))),
            },
        }
    }

    pub fn point_map(&self) -> Result<&PointMap> {
        self.map.as_ref().ok_or_else(|| Error::Precondition("route has no quartic map".into()))
    }
}

fn positive_root(p: &PolyQ) -> Option<PolyQ> {
    p.sqrt().filter(|r| !r.is_zero())
}

fn positive_rat_root(v: &Rat) -> Option<Rat> {
    rat_sqrt(v).filter(|r| r.cmp0() != Ordering::Equal).map(|r| r.abs())
}

/// The fiber of `s` at T = t0.
pub fn specialize(s: &SurfaceQT, t0: &Rat) -> Result<Fiber> {
    if s.discriminant().eval(t0).cmp0() == Ordering::Equal {
        return Err(Error::SingularFiber(format!("discriminant vanishes at T = {t0}")));
    }
    let t0 = t0.clone();
    let f = match &s.form {
        SurfaceForm::Weierstrass(a) => {
            let curve = WeierstrassQ::new(std::array::from_fn(|i| a[i].eval(&t0)))
                .map_err(|_| Error::SingularFiber(format!("discriminant vanishes at T = {t0}")))?;
            return Ok(Fiber { t0, curve, route: Route::Weierstrass, quartic: None, map: None });
        }
        SurfaceForm::Discriminant(f) => f,
    };
    let singular = |e: Error| match e {
        Error::Singular(m) => Error::SingularFiber(format!("T = {t0}: {m}")),
        other => other,
    };
    if f.deg_x() == Some(3) {
        let c: [Rat; 4] = std::array::from_fn(|i| f.row(i).eval(&t0));
        if c[3].cmp0() == Ordering::Equal {
            return Err(Error::SingularFiber(format!("cubic degenerates at T = {t0}")));
        }
        let lead = c[3].clone();
        let curve = WeierstrassQ::new([
            Rat::new(),
            c[2].clone(),
            Rat::new(),
            Rat::from(&c[1] * &lead),
            Rat::from(&c[0] * Rat::from(lead.square_ref())),
        ])
        .map_err(singular)?;
        return Ok(Fiber { t0, curve, route: Route::Cubic { lead }, quartic: None, map: None });
    }

    let q: QuarticCoeffs = std::array::from_fn(|i| f.row(i).eval(&t0));
    let leading_route = |alpha_t0: Rat| -> Result<(WeierstrassQ, PointMap, Rat)> {
        let n = normalize_with(&q, alpha_t0)?;
        let dep = depress_monic(&n.coeffs)?;
        let cubic = depressed_quartic_to_cubic(&dep.c, &dep.d, &dep.e).map_err(singular)?;
        Ok((cubic.curve, cubic.map, dep.shift))
    };
    let constant_route = |q0: &Rat| -> Result<(WeierstrassQ, PointMap)> {
        square_constant_quartic_to_cubic(&q[4], &q[3], &q[2], &q[1], q0).map_err(singular)
    };

    if let Some(alpha) = positive_root(&f.row(4)) {
        let alpha_t0 = alpha.eval(&t0);
        if alpha_t0.cmp0() != Ordering::Equal {
            let (curve, map, shift) = leading_route(alpha_t0.clone())?;
            let route = Route::LeadingSquare { alpha, alpha_t0, shift };
            return Ok(Fiber { t0, curve, route, quartic: Some(q), map: Some(map) });
        }
    }
    if let Some(qt) = positive_root(&f.row(0)) {
        let q_t0 = qt.eval(&t0);
        if q_t0.cmp0() != Ordering::Equal {
            let (curve, map) = constant_route(&q_t0)?;
            let route = Route::ConstantSquare { q: qt, q_t0 };
            return Ok(Fiber { t0, curve, route, quartic: Some(q.clone()), map: Some(map) });
        }
    }
    if let Some(alpha_t0) = positive_rat_root(&q[4]) {
        let (curve, map, shift) = leading_route(alpha_t0.clone())?;
        let route = Route::FiberLeadingSquare { alpha_t0, shift };
        return Ok(Fiber { t0, curve, route, quartic: Some(q), map: Some(map) });
    }
    if let Some(q_t0) = positive_rat_root(&q[0]) {
        let (curve, map) = constant_route(&q_t0)?;
        let route = Route::FiberConstantSquare { q_t0 };
        return Ok(Fiber { t0, curve, route, quartic: Some(q.clone()), map: Some(map) });
    }
    Err(Error::CannotNormalize(format!(
        "fiber at T = {t0} has neither a square leading nor a square constant coefficient"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, BiPolyQ};
    use crate::construction::{catalog_entry, rank6_to_weierstrass, Rank6Params};

    #[test]
    fn catalog_routes_and_points() {
        for (name, t0) in [("rank7-quartic", 20), ("rank8-quartic", 1), ("dependent10", 20)] {
            let e = catalog_entry(name).unwrap();
            let fib = specialize(&e.surface, &Rat::from(t0)).unwrap();
            for p in &e.points {
                let img = fib.map_point(p).unwrap();
                assert!(fib.curve.contains(&img), "{name}: {p}");
                if !img.is_infinity() {
                    assert_eq!(fib.unmap_point(&img).unwrap(), p.eval(&fib.t0));
                }
            }
            match (name, &fib.route) {
                ("rank8-quartic", Route::LeadingSquare { .. }) => {}
                ("rank7-quartic" | "dependent10", Route::ConstantSquare { .. }) => {}
                other => panic!("unexpected route {other:?}"),
            }
        }
    }

    #[test]
    fn rank8_fiber_minimal_model() {
        let e = catalog_entry("rank8-quartic").unwrap();
        let fib = specialize(&e.surface, &rat(1, 1)).unwrap();
        let (m, iso) = crate::transforms::minimal_model(&fib.curve).unwrap();
        let alpha: Rat = "357917711928106838175050781865".parse().unwrap();
        let beta: Rat = "8790806811671574287759992288018136706011725".parse().unwrap();
        assert_eq!(m.coeffs(), &[rat(0, 1), rat(-1, 1), rat(0, 1), -alpha, beta]);
        for p in &e.points {
            assert!(m.contains(&iso.map_point(&fib.map_point(p).unwrap())));
        }
    }

    #[test]
    fn rank6_weierstrass_fiber() {
        let e = catalog_entry("rank6-weierstrass").unwrap();
        let fib = specialize(&e.surface, &rat(0, 1)).unwrap();
        for p in &e.points {
            assert!(fib.curve.contains(&fib.map_point(p).unwrap()));
        }
    }

    #[test]
    fn singular_fiber_at_t1() {
        let p = Rank6Params::from_i64([1, 2, 3, 4, 5, 6]).unwrap();
        let w = rank6_to_weierstrass(&p).unwrap();
        let t1 = Rat::from(2985983999u64);
        assert!(matches!(specialize(&w.surface, &t1), Err(Error::SingularFiber(_))));
        assert!(specialize(&w.surface, &rat(3, 1)).is_ok());
    }

    #[test]
    fn cubic_route() {
        // y^2 = 2x^3 + T
        let f = BiPolyQ::from_terms(&[(3, 0, rat(2, 1)), (0, 1, rat(1, 1))]);
        let s = SurfaceQT::discriminant_form(f, "test").unwrap();
        let fib = specialize(&s, &rat(2, 1)).unwrap();
        // (1, 2): 4 = 2 + 2
        let img = fib.map_rat_point(&RatPoint { x: rat(1, 1), y: rat(2, 1) }).unwrap();
        assert!(fib.curve.contains(&img));
    }

    #[test]
    fn no_square_coefficient() {
        // y^2 = 3x^4 + x + 3 + T
        let f = BiPolyQ::from_terms(&[(4, 0, rat(3, 1)), (1, 0, rat(1, 1)), (0, 0, rat(3, 1)), (0, 1, rat(1, 1))]);
        let s = SurfaceQT::discriminant_form(f, "test").unwrap();
        assert!(matches!(specialize(&s, &rat(0, 1)), Err(Error::CannotNormalize(_))));
        // at T = 1 the constant term is 4
        assert!(matches!(specialize(&s, &rat(1, 1)).unwrap().route, Route::FiberConstantSquare { .. }));
    }
}
