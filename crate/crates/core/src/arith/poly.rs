use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{factor, int_to_rat, rat_sqrt, Coeff, Int, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first. Trailing zeros are never
/// stored, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type PolyZ = Poly<Int>;
pub type PolyQ = Poly<Rat>;

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, deg: usize) -> Self {
        let mut coeffs = vec![C::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn from_i64s(vals: &[i64]) -> Self {
        Self::new(vals.iter().map(|&v| C::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_ref(&C::from_i64(i as i64))).collect())
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coeff> Coeff for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(C::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add_ref(&rhs.coeff(i))).collect())
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub_ref(&rhs.coeff(i))).collect())
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(|c| c.neg_ref()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl PolyZ {
    pub fn to_q(&self) -> PolyQ {
        self.map(int_to_rat)
    }

    pub fn content(&self) -> Int {
        self.coeffs.iter().fold(Int::new(), |g, c| g.gcd(c))
    }

    /// Coefficients reduced into [0, p).
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        self.coeffs.iter().map(|c| super::int_mod_u64(c, p)).collect()
    }
}

impl PolyQ {
    /// Integer polynomial when every coefficient is integral.
    pub fn to_z(&self) -> Option<PolyZ> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.numer().clone())).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    /// Primitive integer polynomial with the same roots (positive leading coefficient).
    pub fn primitive_part(&self) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let den = self.coeffs.iter().fold(Int::from(1), |l, c| l.lcm(c.denom()));
        let scaled: Vec<Int> = self.coeffs.iter().map(|c| Int::from(c.numer() * &den) / c.denom()).collect();
        let p = PolyZ::new(scaled);
        let mut g = p.content();
        if p.leading().is_some_and(|l| l.cmp0() == std::cmp::Ordering::Less) {
            g = -g;
        }
        p.map(|c| Int::from(c / &g))
    }

    pub fn monic(&self) -> PolyQ {
        match self.leading() {
            Some(l) => {
                let inv = Rat::from(l.recip_ref());
                self.scale(&inv)
            }
            None => PolyQ::zero(),
        }
    }

    pub fn div_rem(&self, divisor: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        let dl = divisor.leading().ok_or_else(|| Error::Precondition("division by the zero polynomial".into()))?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let mut quot = vec![Rat::new(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = Rat::from(&rem[k + dd] / dl);
            if q.cmp0() != std::cmp::Ordering::Equal {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= Rat::from(&q * dc);
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((PolyQ::new(quot), PolyQ::new(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &PolyQ) -> Option<PolyQ> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact square root with positive leading coefficient, if one exists.
    pub fn sqrt(&self) -> Option<PolyQ> {
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        let n = self.degree()?;
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let lead = rat_sqrt(self.leading()?)?;
        let two_lead = Rat::from(&lead * 2);
        // Solve for the root's coefficients from the top down.
        let mut root = vec![Rat::new(); m + 1];
        root[m] = lead;
        for k in (0..m).rev() {
            // x^{m+k} in root^2: 2 r_k r_m plus products of already-known terms
            let mut acc = self.coeff(m + k);
            for i in (k + 1)..m {
                acc -= Rat::from(&root[i] * &root[m + k - i]);
            }
            root[k] = Rat::from(&acc / &two_lead);
        }
        let r = PolyQ::new(root);
        (&r * &r == *self).then_some(r)
    }

    /// All rational roots (without multiplicity), in increasing order.
    ///
    /// Candidates are p/q with p dividing the trailing and q the leading
    /// coefficient of the primitive integer form, after stripping x^k.
    pub fn rational_roots(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::Precondition("roots of the zero polynomial".into()));
        }
        let mut roots = Vec::new();
        let v = self.valuation().unwrap_or(0);
        if v > 0 {
            roots.push(Rat::new());
        }
        let stripped = PolyQ::new(self.coeffs[v..].to_vec());
        if stripped.degree() == Some(0) {
            return Ok(roots);
        }
        let prim = stripped.primitive_part();
        let lead = prim.leading().expect("nonzero").clone();
        let trail = prim.coeffs()[0].clone();
        let bound = cauchy_bound(&prim);
        let num_divs = factor::divisors(&trail)?;
        let den_divs = factor::divisors(&lead)?;
        for q in &den_divs {
            for p in &num_divs {
                for sign in [1i32, -1] {
                    let cand = Rat::from((Int::from(p * sign), q.clone()));
                    if cand.denom() != q {
                        continue; // already reached with a smaller denominator
                    }
                    if Rat::from(cand.abs_ref()) > bound {
                        continue;
                    }
                    if eval_homogeneous_is_zero(&prim, cand.numer(), cand.denom()) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

fn cauchy_bound(p: &PolyZ) -> Rat {
    let lead = Rat::from(p.leading().expect("nonzero").clone().abs());
    let max = p.coeffs().iter().map(|c| Int::from(c.abs_ref())).max().unwrap_or_default();
    Rat::from(Rat::from(max) / lead) + 1u32
}

/// Whether q^n * p(num/den) == 0, evaluated in integers.
fn eval_homogeneous_is_zero(p: &PolyZ, num: &Int, den: &Int) -> bool {
    let n = p.coeffs().len() - 1;
    let mut pows_den = Vec::with_capacity(n + 1);
    let mut den_pow = Int::from(1);
    for _ in 0..=n {
        pows_den.push(den_pow.clone());
        den_pow *= den;
    }
    let mut acc = Int::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        acc *= num;
        acc += Int::from(c * &pows_den[n - i]);
    }
    acc.cmp0() == std::cmp::Ordering::Equal
}
