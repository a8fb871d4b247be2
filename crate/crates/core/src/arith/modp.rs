use super::{int_mod_u64, Int, PolyZ};
use crate::error::{Error, Result};

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo `m` by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin; the witness set is exact for all of u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol (a/n) for odd n.
pub fn jacobi_u64(a: u64, n: u64) -> i32 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let (mut a, mut n) = (a % n, n);
    let mut sign = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// A verified odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p % 2 == 1 && is_prime_u64(p) {
            Ok(OddPrime(p))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Quadratic character of an arbitrary integer modulo an odd prime.
pub fn legendre_symbol(a: &Int, p: u64) -> Result<i32> {
    let p = OddPrime::new(p)?;
    Ok(jacobi_u64(int_mod_u64(a, p.get()), p.get()))
}

/// Residue arithmetic modulo a fixed odd prime.
#[derive(Clone, Copy, Debug)]
pub struct ModP {
    p: u64,
}

impl ModP {
    pub fn new(p: OddPrime) -> Self {
        ModP { p: p.get() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        inv_mod(a, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn from_int(&self, v: &Int) -> u64 {
        int_mod_u64(v, self.p)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Horner evaluation of reduced coefficients (lowest degree first).
    pub fn eval(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// Table of the quadratic character on 0..p, one byte per residue.
#[derive(Clone, Debug)]
pub struct CharTable {
    p: u64,
    chi: Vec<i8>,
}

impl CharTable {
    pub fn new(p: OddPrime) -> Self {
        let p = p.get();
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for x in 1..=(p - 1) / 2 {
            chi[mul_mod(x, x, p) as usize] = 1;
        }
        CharTable { p, chi }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Character of a residue already reduced into [0, p).
    #[inline]
    pub fn chi(&self, r: u64) -> i32 {
        i32::from(self.chi[r as usize])
    }
}

/// Distinct roots of f modulo p, by exhaustion.
pub fn poly_roots_mod_p(f: &PolyZ, p: u64) -> Result<Vec<u64>> {
    let fp = ModP::new(OddPrime::new(p)?);
    let coeffs = f.reduce_mod(p);
    if coeffs.iter().all(|&c| c == 0) {
        return Err(Error::DegeneratePolynomial(p));
    }
    Ok((0..p).filter(|&x| fp.eval(&coeffs, x) == 0).collect())
}

/// Odd primes p with 3 <= p <= bound, via an Eratosthenes sieve.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (3..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}
