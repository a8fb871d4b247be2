//! Closed forms for the two complete character sums that drive the rank
//! computations: products of two shifted linear characters, and the
//! character of a quadratic polynomial.

use crate::arith::{int_mod_u64, jacobi_u64, legendre_symbol, Int, OddPrime, PolyZ};
use crate::error::{Error, Result};

/// Which closed-form case produced a quadratic sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadBranch {
    /// a nonzero, p divides b^2 - 4ac: value (p-1)(a/p).
    DiscriminantDivisible,
    /// a nonzero, p does not divide b^2 - 4ac: value -(a/p).
    Generic,
    /// a = 0, b nonzero: a full linear character sum, value 0.
    DegenerateLinear,
    /// a = b = 0: value p (c/p). Only produced by [`quadratic_sum_total`].
    DegenerateConstant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSumResult {
    pub value: Int,
    pub branch: QuadBranch,
}

fn odd_prime(p: u64) -> Result<u64> {
    Ok(OddPrime::new(p)?.get())
}

/// Sum over x mod p of ((n1 + x)/p)((n2 + x)/p).
pub fn factorizable_sum(n1: &Int, n2: &Int, p: u64) -> Result<Int> {
    let p = odd_prime(p)?;
    let diff = Int::from(n1 - n2);
    if int_mod_u64(&diff, p) == 0 {
        Ok(Int::from(p - 1))
    } else {
        Ok(Int::from(-1))
    }
}

/// Sum over t mod p of ((a t^2 + b t + c)/p). Requires (a, b) not both zero mod p.
pub fn quadratic_sum(a: &Int, b: &Int, c: &Int, p: u64) -> Result<QuadSumResult> {
    let p = odd_prime(p)?;
    let (ap, bp) = (int_mod_u64(a, p), int_mod_u64(b, p));
    if ap == 0 && bp == 0 {
        return Err(Error::Precondition(format!("quadratic sum needs a or b nonzero mod {p}")));
    }
    quadratic_sum_total(a, b, c, p)
}

/// Like [`quadratic_sum`], but also closes the constant case a = b = 0.
pub fn quadratic_sum_total(a: &Int, b: &Int, c: &Int, p: u64) -> Result<QuadSumResult> {
    let p = odd_prime(p)?;
    let (ap, bp) = (int_mod_u64(a, p), int_mod_u64(b, p));
    if ap == 0 {
        if bp != 0 {
            return Ok(QuadSumResult { value: Int::new(), branch: QuadBranch::DegenerateLinear });
        }
        let chi_c = legendre_symbol(c, p)?;
        return Ok(QuadSumResult {
            value: Int::from(i64::from(chi_c) * p as i64),
            branch: QuadBranch::DegenerateConstant,
        });
    }
    let chi_a = i64::from(jacobi_u64(ap, p));
    let disc = Int::from(b.square_ref()) - Int::from(a * c) * 4u32;
    if int_mod_u64(&disc, p) == 0 {
        Ok(QuadSumResult { value: Int::from((p as i64 - 1) * chi_a), branch: QuadBranch::DiscriminantDivisible })
    } else {
        Ok(QuadSumResult { value: Int::from(-chi_a), branch: QuadBranch::Generic })
    }
}

/// Sum over t mod p of (f(t)/p), by direct evaluation.
pub fn brute_force_char_sum(f: &PolyZ, p: u64) -> Result<Int> {
    let p = odd_prime(p)?;
    let coeffs = f.reduce_mod(p);
    let mut total: i64 = 0;
    for t in 0..p {
        let v = coeffs.iter().rev().fold(0u64, |acc, &c| ((acc as u128 * t as u128 + c as u128) % p as u128) as u64);
        total += i64::from(jacobi_u64(v, p));
    }
    Ok(Int::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::odd_primes_up_to;

    fn i(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn linear_pairs() {
        assert_eq!(factorizable_sum(&i(3), &i(3), 7).unwrap(), i(6));
        assert_eq!(factorizable_sum(&i(0), &i(1), 5).unwrap(), i(-1));
        assert_eq!(factorizable_sum(&i(0), &i(1), 2), Err(Error::InvalidModulus(2)));
    }

    #[test]
    fn quadratic_branches() {
        let r = quadratic_sum(&i(1), &i(0), &i(0), 7).unwrap();
        assert_eq!((r.value, r.branch), (i(6), QuadBranch::DiscriminantDivisible));
        let r = quadratic_sum(&i(1), &i(0), &i(-1), 7).unwrap();
        assert_eq!((r.value, r.branch), (i(-1), QuadBranch::Generic));
        let r = quadratic_sum(&i(7), &i(3), &i(5), 7).unwrap();
        assert_eq!((r.value, r.branch), (i(0), QuadBranch::DegenerateLinear));
        assert!(matches!(quadratic_sum(&i(7), &i(14), &i(1), 7), Err(Error::Precondition(_))));
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_char_sum(&PolyZ::from_i64s(&[0, 0, 1]), 5).unwrap(), i(4));
        assert_eq!(brute_force_char_sum(&PolyZ::from_i64s(&[0, 1]), 7).unwrap(), i(0));
    }

    #[test]
    fn constant_case_in_total_variant() {
        for &p in &odd_primes_up_to(30) {
            for c in 0..p as i64 {
                let r = quadratic_sum_total(&i(0), &i(0), &i(c), p).unwrap();
                let want = brute_force_char_sum(&PolyZ::from_i64s(&[c]), p).unwrap();
                assert_eq!(r.value, want);
            }
        }
    }
}
