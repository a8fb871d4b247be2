//! Fiber point counts, Nagao averages A_E(p) and Rosen-Silverman partial sums.

mod certificate;

use rayon::prelude::*;

use crate::arith::{odd_primes_up_to, rat_mod_u64, CharTable, Int, OddPrime, PolyQ, Rat};
use crate::construction::{SurfaceForm, SurfaceQT};
use crate::error::{Error, Result};

pub use certificate::{rank6_double_sum, rank6_exact_certificate, Certificate, CertificateLedger};

/// Per-prime kernels keep every product below 2^62.
pub const KERNEL_PRIME_BOUND: u64 = 1 << 31;

/// What a fiber with p | Δ(t) contributes to A_E(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BadFiber {
    /// a_t(p) = 0.
    Zero,
    /// The raw character sum, as if the fiber were good.
    Raw,
}

impl BadFiber {
    /// Zero for Weierstrass models, raw sums for y^2 = f(x, T).
    pub fn default_for(s: &SurfaceQT) -> Self {
        match s.form {
            SurfaceForm::Weierstrass(_) => BadFiber::Zero,
            SurfaceForm::Discriminant(_) => BadFiber::Raw,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCount {
    pub p: u64,
    pub t: u64,
    /// p + 1 - a_t(p).
    pub n_points: Int,
    pub a_t: Int,
    /// p divides Δ(t).
    pub bad: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NagaoRecord {
    pub p: u64,
    /// A_E(p) = (1/p) Σ_t a_t(p).
    pub a_e: Rat,
    /// -p A_E(p).
    pub minus_p_a: Int,
    pub expected: Option<Int>,
    /// minus_p_a - expected.
    pub deviation: Option<Int>,
}

impl NagaoRecord {
    /// Fills in expected = rank * p and the deviation from it.
    pub fn with_expected_rank(mut self, rank: u64) -> Self {
        let expected = Int::from(rank) * self.p;
        self.deviation = Some(Int::from(&self.minus_p_a - &expected));
        self.expected = Some(expected);
        self
    }
}

enum Kind {
    Weierstrass([Vec<u64>; 5]),
    /// Coefficient of x^i as a polynomial in t, for i = 0..=deg_x.
    Discriminant(Vec<Vec<u64>>),
}

/// A surface reduced modulo p.
struct Reduced {
    p: u64,
    kind: Kind,
    disc: Vec<u64>,
}

#[inline]
fn horner(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

fn reduce_poly(f: &PolyQ, p: u64) -> Result<Vec<u64>> {
    f.coeffs().iter().map(|c| rat_mod_u64(c, p).ok_or(Error::UnsupportedPrime(p))).collect()
}

fn check_prime(p: u64) -> Result<OddPrime> {
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    let odd = OddPrime::new(p)?;
    if p >= KERNEL_PRIME_BOUND {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(odd)
}

impl Reduced {
    fn new(s: &SurfaceQT, p: u64) -> Result<Self> {
        check_prime(p)?;
        let kind = match &s.form {
            SurfaceForm::Weierstrass(a) => {
                let r: Vec<Vec<u64>> = a.iter().map(|c| reduce_poly(c, p)).collect::<Result<_>>()?;
                Kind::Weierstrass(r.try_into().expect("five coefficients"))
            }
            SurfaceForm::Discriminant(f) => {
                Kind::Discriminant(f.rows().iter().map(|r| reduce_poly(r, p)).collect::<Result<_>>()?)
            }
        };
        let disc = reduce_poly(&s.discriminant(), p)?;
        Ok(Reduced { p, kind, disc })
    }

    fn is_bad(&self, t: u64) -> bool {
        horner(&self.disc, t, self.p) == 0
    }

    /// Σ_x χ(g_t(x)) where N_t = p + 1 + (that sum) on good fibers.
    fn char_sum(&self, chi: &CharTable, t: u64) -> i64 {
        let p = self.p;
        let mut coeffs = match &self.kind {
            Kind::Weierstrass(a) => {
                let [a1, a2, a3, a4, a6] = a.clone().map(|c| horner(&c, t, p));
                // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
                let b2 = (a1 * a1 + 4 * a2) % p;
                let b4 = (2 * a4 + a1 * a3) % p;
                let b6 = (a3 * a3 + 4 * a6) % p;
                vec![b6, 2 * b4 % p, b2, 4 % p]
            }
            Kind::Discriminant(rows) => rows.iter().map(|r| horner(r, t, p)).collect(),
        };
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        (0..p).map(|x| chi.chi(horner(&coeffs, x, p)) as i64).sum()
    }

    /// Affine solutions of the long Weierstrass equation, by looping over y.
    fn direct_count(&self, t: u64) -> i64 {
        let p = self.p;
        let Kind::Weierstrass(a) = &self.kind else { unreachable!() };
        let [a1, a2, a3, a4, a6] = a.clone().map(|c| horner(&c, t, p));
        let mut n = 0;
        for x in 0..p {
            let rhs = (((x + a2) * x % p + a4) * x + a6) % p;
            for y in 0..p {
                if (y * y + a1 * x % p * y + a3 * y) % p == rhs {
                    n += 1;
                }
            }
        }
        n
    }

    fn a_t(&self, chi: &CharTable, t: u64, conv: BadFiber) -> (i64, bool) {
        let bad = self.is_bad(t);
        if bad && conv == BadFiber::Zero {
            return (0, true);
        }
        let a = match (&self.kind, self.p) {
            (Kind::Weierstrass(_), 3) => self.p as i64 - self.direct_count(t),
            _ => -self.char_sum(chi, t),
        };
        (a, bad)
    }
}

/// a_t(p) and N_t(p) for the fiber over t mod p.
pub fn count_fiber(s: &SurfaceQT, t: u64, p: u64) -> Result<FiberCount> {
    count_fiber_with(s, t, p, BadFiber::default_for(s))
}

pub fn count_fiber_with(s: &SurfaceQT, t: u64, p: u64, conv: BadFiber) -> Result<FiberCount> {
    let red = Reduced::new(s, p)?;
    let chi = CharTable::new(check_prime(p)?);
    let (a, bad) = red.a_t(&chi, t % p, conv);
    Ok(FiberCount { p, t: t % p, n_points: Int::from(p as i64 + 1 - a), a_t: Int::from(a), bad })
}

fn record(p: u64, sum_a: i64) -> NagaoRecord {
    NagaoRecord { p, a_e: Rat::from((sum_a, p as i64)), minus_p_a: Int::from(-sum_a), expected: None, deviation: None }
}

/// Exact A_E(p), as the double character sum Σ_t Σ_x.
pub fn nagao_sum(s: &SurfaceQT, p: u64) -> Result<NagaoRecord> {
    nagao_sum_with(s, p, BadFiber::default_for(s))
}

pub fn nagao_sum_with(s: &SurfaceQT, p: u64, conv: BadFiber) -> Result<NagaoRecord> {
    let red = Reduced::new(s, p)?;
    let chi = CharTable::new(check_prime(p)?);
    let total: i64 = (0..p).map(|t| red.a_t(&chi, t, conv).0).sum();
    Ok(record(p, total))
}

/// Same quantity assembled from [`count_fiber_with`] one fiber at a time.
pub fn nagao_sum_by_fibers(s: &SurfaceQT, p: u64, conv: BadFiber) -> Result<NagaoRecord> {
    let mut total = Int::new();
    for t in 0..p {
        total += count_fiber_with(s, t, p, conv)?.a_t;
    }
    Ok(record(p, total.to_i64().expect("bounded by p^2")))
}

/// Nagao records over many primes, computed in parallel and returned in
/// prime order.
pub fn nagao_sums(
    s: &SurfaceQT,
    primes: &[u64],
    conv: BadFiber,
    expected_rank: Option<u64>,
) -> Result<Vec<NagaoRecord>> {
    primes
        .par_iter()
        .map(|&p| {
            let r = nagao_sum_with(s, p, conv)?;
            Ok(match expected_rank {
                Some(k) => r.with_expected_rank(k),
                None => r,
            })
        })
        .collect()
}

/// Odd primes up to `bound` at which every coefficient of `s` is p-integral.
pub fn supported_primes(s: &SurfaceQT, bound: u64) -> Vec<u64> {
    odd_primes_up_to(bound.min(KERNEL_PRIME_BOUND - 1)).into_iter().filter(|&p| Reduced::new(s, p).is_ok()).collect()
}

#[derive(Clone, Debug)]
pub struct RosenSilverman {
    pub x_bound: u64,
    /// (1/X) Σ_{p <= X} -A_E(p) log p.
    pub value: f64,
    pub records: Vec<NagaoRecord>,
}

pub fn rosen_silverman_partial(s: &SurfaceQT, x_bound: u64) -> Result<RosenSilverman> {
    let primes = supported_primes(s, x_bound);
    let records = nagao_sums(s, &primes, BadFiber::default_for(s), None)?;
    let total: f64 = records.iter().map(|r| -r.a_e.to_f64() * (r.p as f64).ln()).sum();
    let value = if x_bound == 0 { 0.0 } else { total / x_bound as f64 };
    Ok(RosenSilverman { x_bound, value, records })
}

/// Largest |deviation| among records that carry one.
pub fn max_abs_deviation(records: &[NagaoRecord]) -> Option<Int> {
    records.iter().filter_map(|r| r.deviation.as_ref()).map(|d| Int::from(d.abs_ref())).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, BiPolyQ};

    fn weier(a: [&[i64]; 5]) -> SurfaceQT {
        SurfaceQT::weierstrass(a.map(PolyQ::from_i64s), "test").unwrap()
    }

    #[test]
    fn y2_x3_plus_x_over_f5() {
        let s = weier([&[], &[], &[], &[1], &[]]);
        let c = count_fiber(&s, 0, 5).unwrap();
        // affine points: (0,0), (2,0), (3,0); plus infinity
        assert_eq!(c.n_points, 4);
        assert_eq!(c.a_t, 2);
        assert!(!c.bad);
    }

    #[test]
    fn characteristic_two_and_bad_fibers() {
        let s = weier([&[], &[], &[], &[], &[0, 1]]);
        assert!(matches!(count_fiber(&s, 1, 2), Err(Error::UnsupportedCharacteristic(2))));
        let bad = count_fiber(&s, 0, 7).unwrap();
        assert!(bad.bad);
        assert_eq!(bad.a_t, 0);
    }

    #[test]
    fn p_three_uses_direct_count() {
        let s = weier([&[1], &[], &[1], &[-1], &[1]]);
        let direct = count_fiber(&s, 0, 3).unwrap();
        // brute-force over all (x, y) in F_3^2
        let mut n = 1;
        for x in 0..3i64 {
            for y in 0..3i64 {
                if (y * y + x * y + y - (x * x * x - x + 1)).rem_euclid(3) == 0 {
                    n += 1;
                }
            }
        }
        assert_eq!(direct.n_points, n);
    }

    #[test]
    fn double_sum_matches_fibers() {
        let f = BiPolyQ::from_terms(&[(3, 0, rat(1, 1)), (1, 1, rat(1, 1)), (0, 2, rat(1, 1)), (0, 0, rat(3, 1))]);
        let s = SurfaceQT::discriminant_form(f, "test").unwrap();
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(
                nagao_sum_with(&s, p, BadFiber::Raw).unwrap(),
                nagao_sum_by_fibers(&s, p, BadFiber::Raw).unwrap()
            );
        }
    }

    #[test]
    fn denominators_rejected() {
        let f = BiPolyQ::from_terms(&[(3, 0, rat(1, 5)), (0, 1, rat(1, 1))]);
        let s = SurfaceQT::discriminant_form(f, "test").unwrap();
        assert!(matches!(nagao_sum(&s, 5), Err(Error::UnsupportedPrime(5))));
        assert!(!supported_primes(&s, 20).contains(&5));
    }

    #[test]
    fn rosen_silverman_below_first_prime() {
        let s = weier([&[], &[], &[], &[], &[0, 1]]);
        assert_eq!(rosen_silverman_partial(&s, 2).unwrap().value, 0.0);
    }
}
