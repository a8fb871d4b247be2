//! Exact arithmetic substrate: arbitrary-precision integers and rationals,
//! residues modulo odd primes, and univariate / bivariate polynomials.
//!
//! `Int` and `Rat` are GMP-backed; a `Rat` is always kept in lowest terms with
//! a positive denominator. Nothing in this module touches floating point.

mod bipoly;
pub mod factor;
mod invariants;
mod modp;
mod poly;

use std::fmt;

pub use bipoly::{bipoly_discriminant_in_t, BiPoly, BiPolyQ, BiPolyZ};
pub use invariants::{quartic_invariants, weierstrass_invariants, Invariants};
pub use modp::{
    is_prime_u64, jacobi_u64, legendre_symbol, odd_primes_up_to, poly_roots_mod_p, CharTable, ModP, OddPrime,
};
pub use poly::{Poly, PolyQ, PolyZ};

use crate::error::{Error, Result};

pub type Int = rug::Integer;
pub type Rat = rug::Rational;

/// Ring operations shared by the coefficient types polynomials are built on.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coeff for Int {
    fn zero() -> Self {
        Int::new()
    }
    fn one() -> Self {
        Int::from(1)
    }
    fn from_i64(v: i64) -> Self {
        Int::from(v)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn add_ref(&self, other: &Self) -> Self {
        Int::from(self + other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Int::from(self - other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Int::from(self * other)
    }
    fn neg_ref(&self) -> Self {
        Int::from(-self)
    }
}

impl Coeff for Rat {
    fn zero() -> Self {
        Rat::new()
    }
    fn one() -> Self {
        Rat::from(1)
    }
    fn from_i64(v: i64) -> Self {
        Rat::from(v)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn add_ref(&self, other: &Self) -> Self {
        Rat::from(self + other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Rat::from(self - other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Rat::from(self * other)
    }
    fn neg_ref(&self) -> Self {
        Rat::from(-self)
    }
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::from((Int::from(num), Int::from(den)))
}

pub fn int_to_rat(v: &Int) -> Rat {
    Rat::from(v.clone())
}

/// Parses `"123"`, `"-4/6"` or `"  7 "` into a reduced rational.
pub fn parse_rat(src: &str) -> Result<Rat> {
    let s = src.trim();
    let bad = || Error::Shape(format!("not a rational number: {src:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = Int::from_str_radix(n.trim(), 10).map_err(|_| bad())?;
            let d = Int::from_str_radix(d.trim(), 10).map_err(|_| bad())?;
            if d.cmp0() == std::cmp::Ordering::Equal {
                return Err(bad());
            }
            Ok(Rat::from((n, d)))
        }
        None => Ok(Rat::from(Int::from_str_radix(s, 10).map_err(|_| bad())?)),
    }
}

pub fn parse_int(src: &str) -> Result<Int> {
    Int::from_str_radix(src.trim(), 10).map_err(|_| Error::Shape(format!("not an integer: {src:?}")))
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn rat_sqrt(v: &Rat) -> Option<Rat> {
    if v.cmp0() == std::cmp::Ordering::Less {
        return None;
    }
    let (n, d) = (v.numer(), v.denom());
    if n.is_perfect_square() && d.is_perfect_square() {
        Some(Rat::from((n.clone().sqrt(), d.clone().sqrt())))
    } else {
        None
    }
}

pub fn int_mod_u64(v: &Int, p: u64) -> u64 {
    let m = Int::from(p);
    let (_, r) = v.clone().div_rem_euc(m);
    r.to_u64().expect("remainder below modulus")
}

/// Image of a rational in Z/pZ; `None` when p divides the denominator.
pub fn rat_mod_u64(v: &Rat, p: u64) -> Option<u64> {
    let d = int_mod_u64(v.denom(), p);
    if d == 0 {
        return None;
    }
    let n = int_mod_u64(v.numer(), p);
    let inv = modp::inv_mod(d, p)?;
    Some(modp::mul_mod(n, inv, p))
}

/// Natural log of |v| for a nonzero integer, accurate for arbitrarily large values.
pub fn ln_abs_int(v: &Int) -> f64 {
    let bits = v.significant_bits();
    if bits <= 1000 {
        return v.to_f64().abs().ln();
    }
    let shift = bits - 64;
    let top = Int::from(v.clone().abs() >> shift);
    top.to_f64().ln() + f64::from(shift) * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rat(" 12 ").unwrap(), rat(12, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rat_sqrt(&rat(9, 49)), Some(rat(3, 7)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-4, 1)), None);
    }

    #[test]
    fn reduction_mod_p() {
        assert_eq!(rat_mod_u64(&rat(1, 2), 7), Some(4));
        assert_eq!(rat_mod_u64(&rat(-1, 1), 7), Some(6));
        assert_eq!(rat_mod_u64(&rat(1, 14), 7), None);
    }

    #[test]
    fn big_logs() {
        let v = Int::from(10).pow(400u32);
        let want = 400.0 * std::f64::consts::LN_10;
        assert!((ln_abs_int(&v) - want).abs() < 1e-9);
    }
}
