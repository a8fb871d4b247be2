//! The rank 6 family y^2 = x^3 T^2 + 2 g(x) T - h(x), with
//! g = x^3 + a x^2 + b x + c and h = (A - 1) x^3 + B x^2 + C x + D chosen so
//! that g^2 + x^3 h = A (x - r_1) ... (x - r_6) with every r_i a square.

use std::cmp::Ordering;

use rug::ops::Pow;

use crate::arith::factor::{factor_partial, Factorization};
use crate::arith::{bipoly_discriminant_in_t, BiPolyZ, Int, PolyQ, PolyZ, Rat};
use crate::error::{Error, Result};

use super::surface::SurfaceQT;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank6Params {
    /// The chosen ρ_i; the roots of D_T are their squares.
    pub roots: [Int; 6],
    /// Coefficients of the monic product of (x - ρ_i^2): x^6 + R5 x^5 + ... + R0.
    pub r: [Int; 6],
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub big_a: Int,
    pub big_b: Int,
    pub big_c: Int,
    pub big_d: Int,
}

/// Coefficients R0..R5 of the monic product of (x - ρ_i^2).
pub fn roots_to_elementary(roots: &[Int; 6]) -> Result<[Int; 6]> {
    let squares: Vec<Int> = roots.iter().map(|r| Int::from(r.square_ref())).collect();
    if roots.iter().any(|r| r.cmp0() == Ordering::Equal) {
        return Err(Error::InvalidRoots("roots must be nonzero".into()));
    }
    for i in 0..6 {
        for j in 0..i {
            if squares[i] == squares[j] {
                return Err(Error::InvalidRoots(format!("roots {} and {} have the same square", roots[j], roots[i])));
            }
        }
    }
    let prod = squares.iter().fold(PolyZ::one(), |acc, r| &acc * &PolyZ::new(vec![Int::from(-r), Int::from(1)]));
    Ok(std::array::from_fn(|i| prod.coeff(i)))
}

pub fn solve_rank6(roots: &[Int; 6]) -> Result<Rank6Params> {
    let r = roots_to_elementary(roots)?;
    let [r0, r1, r2, r3, r4, r5] = &r;
    let big_a = Int::from(r0.clone().pow(3)) * 64u32;
    let c = Int::from(r0.square_ref()) * 8u32;
    let b = Int::from(r0 * r1) * 4u32;
    let a = Int::from(r0 * r2) * 4u32 - Int::from(r1.square_ref());
    let big_b = Int::from(r5 * &big_a) - Int::from(&a * 2u32);
    let big_c = Int::from(r4 * &big_a) - Int::from(a.square_ref()) - Int::from(&b * 2u32);
    let big_d = Int::from(r3 * &big_a) - Int::from(&a * &b) * 2u32 - Int::from(&c * 2u32);
    let params = Rank6Params { roots: roots.clone(), r: r.clone(), a, b, c, big_a, big_b, big_c, big_d };
    let monic = PolyZ::new(r.iter().cloned().chain([Int::from(1)]).collect());
    if params.d_t()? != monic.scale(&params.big_a) {
        return Err(Error::InvalidRoots("solved coefficients do not reproduce the prescribed roots".into()));
    }
    Ok(params)
}

impl Rank6Params {
    pub fn from_i64(roots: [i64; 6]) -> Result<Self> {
        solve_rank6(&roots.map(Int::from))
    }

    /// g(x) = x^3 + a x^2 + b x + c.
    pub fn g(&self) -> PolyZ {
        PolyZ::new(vec![self.c.clone(), self.b.clone(), self.a.clone(), Int::from(1)])
    }

    /// h(x) = (A - 1) x^3 + B x^2 + C x + D.
    pub fn h(&self) -> PolyZ {
        PolyZ::new(vec![self.big_d.clone(), self.big_c.clone(), self.big_b.clone(), Int::from(&self.big_a - 1u32)])
    }

    /// f(x, T) = x^3 T^2 + 2 g(x) T - h(x).
    pub fn f(&self) -> BiPolyZ {
        let g = self.g();
        let h = self.h();
        let mut rows = Vec::with_capacity(4);
        for i in 0..4 {
            let t2 = if i == 3 { Int::from(1) } else { Int::new() };
            rows.push(PolyZ::new(vec![Int::from(-h.coeff(i)), Int::from(g.coeff(i) * 2u32), t2]));
        }
        BiPolyZ::from_rows(rows)
    }

    /// D_T(x) = g^2 + x^3 h.
    pub fn d_t(&self) -> Result<PolyZ> {
        bipoly_discriminant_in_t(&self.f())
    }

    pub fn discriminant_surface(&self) -> Result<SurfaceQT> {
        SurfaceQT::discriminant_form(self.f().to_q(), "rank6-discriminant")
    }

    /// The quadratic T^2 + 2T - A + 1 whose roots are t1, t2.
    pub fn k_poly(&self) -> PolyZ {
        PolyZ::new(vec![Int::from(1) - &self.big_a, Int::from(2), Int::from(1)])
    }

    /// D(t) = (2bt - C)^2 - 4(2at - B)(2ct - D).
    pub fn big_d_at(&self, t: &Int) -> Int {
        let u = Int::from(&self.b * t) * 2u32 - &self.big_c;
        let v = Int::from(&self.a * t) * 2u32 - &self.big_b;
        let w = Int::from(&self.c * t) * 2u32 - &self.big_d;
        Int::from(u.square_ref()) - v * w * 4u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub t1: Int,
    pub t2: Int,
    pub d_t1: Int,
    pub d_t2: Int,
    /// Primes found in D(t1) D(t2) a b c A B C D (t1 - t2), sorted.
    pub bad_primes: Vec<Int>,
    /// Composite parts that resisted factorization, listed verbatim.
    pub unfactored: Vec<Int>,
    pub admissible: bool,
}

/// Evaluates D(t) at the two roots t1 = sqrt(A) - 1, t2 = -sqrt(A) - 1 and
/// collects the primes where the rank argument can break down.
pub fn admissibility_check(params: &Rank6Params) -> Result<AdmissibilityReport> {
    if !params.big_a.is_perfect_square() {
        return Err(Error::Precondition(format!("A = {} is not a perfect square", params.big_a)));
    }
    let s = params.big_a.clone().sqrt();
    let t1 = Int::from(&s - 1u32);
    let t2 = Int::from(-&s) - 1u32;
    let d_t1 = params.big_d_at(&t1);
    let d_t2 = params.big_d_at(&t2);
    let mut primes: Vec<Int> = Vec::new();
    let mut unfactored = Vec::new();
    let diff = Int::from(&t1 - &t2);
    let values = [
        &d_t1,
        &d_t2,
        &params.a,
        &params.b,
        &params.c,
        &params.big_a,
        &params.big_b,
        &params.big_c,
        &params.big_d,
        &diff,
    ];
    for v in values {
        if v.cmp0() == Ordering::Equal {
            continue;
        }
        let Factorization { primes: ps, cofactor } = factor_partial(v);
        primes.extend(ps.into_iter().map(|(p, _)| p));
        if cofactor != 1 {
            unfactored.push(cofactor);
        }
    }
    primes.sort();
    primes.dedup();
    let admissible = d_t1.cmp0() != Ordering::Equal && d_t2.cmp0() != Ordering::Equal;
    Ok(AdmissibilityReport { t1, t2, d_t1, d_t2, bad_primes: primes, unfactored, admissible })
}

/// Long and short Weierstrass forms of the family.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank6Weierstrass {
    pub surface: SurfaceQT,
    /// y^2 = x^3 + A(T) x + B(T) after x -> x - a2/3.
    pub short_a: PolyQ,
    pub short_b: PolyQ,
}

/// y^2 = x^3 + (2aT - B) x^2 + (2bT - C) k(T) x + (2cT - D) k(T)^2 with
/// k(T) = T^2 + 2T - A + 1.
pub fn rank6_to_weierstrass(params: &Rank6Params) -> Result<Rank6Weierstrass> {
    let lin = |m: &Int, k: &Int| PolyZ::new(vec![Int::from(-k), Int::from(m * 2u32)]).to_q();
    let k = params.k_poly().to_q();
    let a2 = lin(&params.a, &params.big_b);
    let a4 = &lin(&params.b, &params.big_c) * &k;
    let a6 = &(&lin(&params.c, &params.big_d) * &k) * &k;
    let third = Rat::from((1, 3));
    let short_a = &a4 - &(&a2 * &a2).scale(&third);
    let short_b = &(&a6 - &(&a2 * &a4).scale(&third)) + &a2.pow(3).scale(&Rat::from((2, 27)));
    let surface = SurfaceQT::weierstrass([PolyQ::zero(), a2, PolyQ::zero(), a4, a6], "rank6-weierstrass-family")?;
    Ok(Rank6Weierstrass { surface, short_a, short_b })
}
