//! Integer factorization: trial division by small primes, then Brent's
//! variant of Pollard rho. Good enough for the discriminants and conductors
//! that show up here; anything beyond the rho budget is reported rather than
//! guessed at.

use std::cmp::Ordering;
use std::sync::OnceLock;

use rug::integer::IsPrime;

use super::{odd_primes_up_to, Int};
use crate::error::{Error, Result};

const TRIAL_BOUND: u64 = 100_000;
const RHO_ITERATIONS: u64 = 2_000_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut v = vec![2];
        v.extend(odd_primes_up_to(TRIAL_BOUND));
        v
    })
}

pub fn is_probable_prime(n: &Int) -> bool {
    n.is_probably_prime(30) != IsPrime::No
}

/// Result of a factorization attempt: prime powers found, plus whatever
/// composite part resisted the search (1 when complete).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<(Int, u32)>,
    pub cofactor: Int,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor == 1
    }
}

/// Factors |n| as far as the budget allows. `n` must be nonzero.
pub fn factor_partial(n: &Int) -> Factorization {
    assert!(n.cmp0() != Ordering::Equal, "factoring zero");
    let mut rest = Int::from(n.abs_ref());
    let mut primes: Vec<(Int, u32)> = Vec::new();
    for &p in small_primes() {
        if rest == 1 {
            break;
        }
        let pi = Int::from(p);
        if Int::from(&pi * &pi) > rest {
            break;
        }
        let e = rest.remove_factor_mut(&pi);
        if e > 0 {
            primes.push((pi, e));
        }
    }
    let mut cofactor = Int::from(1);
    let mut stack = Vec::new();
    if rest != 1 {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if is_probable_prime(&m) {
            push_prime(&mut primes, m, 1);
            continue;
        }
        if m.is_perfect_square() {
            let r = m.clone().sqrt();
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        match brent_rho(&m) {
            Some(d) => {
                let other = Int::from(&m / &d);
                stack.push(d);
                stack.push(other);
            }
            None => cofactor *= m,
        }
    }
    // Merge repeated primes produced by the splitting stack.
    primes.sort();
    let mut merged: Vec<(Int, u32)> = Vec::new();
    for (p, e) in primes {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    Factorization { primes: merged, cofactor }
}

fn push_prime(primes: &mut Vec<(Int, u32)>, p: Int, e: u32) {
    primes.push((p, e));
}

/// Complete factorization of |n| or an error naming the stubborn part.
pub fn factor(n: &Int) -> Result<Vec<(Int, u32)>> {
    if n.cmp0() == Ordering::Equal {
        return Err(Error::Factorization("cannot factor zero".into()));
    }
    let f = factor_partial(n);
    if f.is_complete() {
        Ok(f.primes)
    } else {
        Err(Error::Factorization(format!("unfactored cofactor {}", f.cofactor)))
    }
}

/// Distinct prime divisors of |n|.
pub fn prime_divisors(n: &Int) -> Result<Vec<Int>> {
    Ok(factor(n)?.into_iter().map(|(p, _)| p).collect())
}

/// Positive divisors of |n|, sorted.
pub fn divisors(n: &Int) -> Result<Vec<Int>> {
    let mut out = vec![Int::from(1)];
    for (p, e) in factor(n)? {
        let base = out.clone();
        let mut pk = Int::from(1);
        for _ in 0..e {
            pk *= &p;
            out.extend(base.iter().map(|d| Int::from(d * &pk)));
        }
    }
    out.sort();
    Ok(out)
}

fn brent_rho(n: &Int) -> Option<Int> {
    for c in 1u32..20 {
        if let Some(d) = brent_rho_with(n, c) {
            return Some(d);
        }
    }
    None
}

fn brent_rho_with(n: &Int, c: u32) -> Option<Int> {
    let f = |x: &Int| -> Int { (Int::from(x.square_ref()) + c) % n };
    let mut y = Int::from(2);
    let mut x;
    let mut ys;
    let mut g = Int::from(1);
    let mut q = Int::from(1);
    let mut r: u64 = 1;
    let m: u64 = 128;
    let mut iters = 0u64;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * Int::from(&x - &y).abs()) % n;
            }
            g = q.clone().gcd(n);
            k += m;
            iters += m;
            if g != 1 {
                if &g == n {
                    // Backtrack one step at a time.
                    loop {
                        ys = f(&ys);
                        g = Int::from(&x - &ys).abs().gcd(n);
                        if g != 1 {
                            break;
                        }
                    }
                }
                return (&g != n).then_some(g);
            }
        }
        r *= 2;
        if iters > RHO_ITERATIONS {
            return None;
        }
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &Int, p: &Int) -> u32 {
    if n.cmp0() == Ordering::Equal {
        return u32::MAX;
    }
    let mut m = n.clone();
    m.remove_factor_mut(p)
}
