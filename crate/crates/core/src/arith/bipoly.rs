use super::{Coeff, Int, Poly, PolyQ, PolyZ, Rat};
use crate::error::{Error, Result};

/// Polynomial in x whose coefficients are polynomials in T.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly<C> {
    inner: Poly<Poly<C>>,
}

pub type BiPolyZ = BiPoly<Int>;
pub type BiPolyQ = BiPoly<Rat>;

impl<C: Coeff> BiPoly<C> {
    pub fn from_rows(rows: Vec<Poly<C>>) -> Self {
        BiPoly { inner: Poly::new(rows) }
    }

    /// Builds from `(i, j, c)` terms meaning `c * x^i * T^j`.
    pub fn from_terms(terms: &[(usize, usize, C)]) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in terms {
            let row = Poly::monomial(Poly::monomial(c.clone(), *j), *i);
            out.inner = &out.inner + &row;
        }
        out
    }

    pub fn zero() -> Self {
        BiPoly { inner: Poly::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Coefficient of x^i T^j.
    pub fn coeff(&self, i: usize, j: usize) -> C {
        self.inner.coeff(i).coeff(j)
    }

    /// Coefficient of x^i as a polynomial in T.
    pub fn row(&self, i: usize) -> Poly<C> {
        self.inner.coeff(i)
    }

    pub fn rows(&self) -> &[Poly<C>] {
        self.inner.coeffs()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.inner.degree()
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.rows().iter().filter_map(|r| r.degree()).max()
    }

    /// Coefficient of T^j as a polynomial in x.
    pub fn coeff_of_t(&self, j: usize) -> Poly<C> {
        Poly::new(self.rows().iter().map(|r| r.coeff(j)).collect())
    }

    /// Specialize T, leaving a polynomial in x.
    pub fn eval_t(&self, t: &C) -> Poly<C> {
        Poly::new(self.rows().iter().map(|r| r.eval(t)).collect())
    }

    /// Specialize x, leaving a polynomial in T.
    pub fn eval_x(&self, x: &C) -> Poly<C> {
        self.inner.eval(&Poly::constant(x.clone()))
    }

    pub fn eval(&self, x: &C, t: &C) -> C {
        self.eval_t(t).eval(x)
    }

    /// Substitute a polynomial in T for x.
    pub fn subst_x(&self, x: &Poly<C>) -> Poly<C> {
        self.inner.eval(x)
    }

    pub fn add(&self, other: &Self) -> Self {
        BiPoly { inner: &self.inner + &other.inner }
    }

    pub fn sub(&self, other: &Self) -> Self {
        BiPoly { inner: &self.inner - &other.inner }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BiPoly { inner: &self.inner * &other.inner }
    }

    pub fn scale(&self, k: &C) -> Self {
        BiPoly { inner: self.inner.map(|r| r.scale(k)) }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BiPoly<D> {
        BiPoly { inner: self.inner.map(|r| r.map(&f)) }
    }
}

impl BiPolyZ {
    pub fn to_q(&self) -> BiPolyQ {
        self.map(|c| Rat::from(c.clone()))
    }
}

impl BiPolyQ {
    /// View as a polynomial in T with coefficients in Q[x].
    pub fn t_rows(&self) -> Vec<PolyQ> {
        match self.deg_t() {
            Some(d) => (0..=d).map(|j| self.coeff_of_t(j)).collect(),
            None => Vec::new(),
        }
    }
}

/// For f = u(x) T^2 + 2 v(x) T - w(x), returns v^2 + u w: one quarter of the
/// discriminant of f viewed as a quadratic in T.
pub fn bipoly_discriminant_in_t(f: &BiPolyZ) -> Result<PolyZ> {
    if f.deg_t() != Some(2) {
        return Err(Error::Shape(format!("expected degree 2 in T, found {:?}", f.deg_t())));
    }
    let u = f.coeff_of_t(2);
    let two_v = f.coeff_of_t(1);
    let minus_w = f.coeff_of_t(0);
    let four_d = &(&two_v * &two_v) - &(&u * &minus_w).scale(&Int::from(4));
    let coeffs = four_d
        .coeffs()
        .iter()
        .map(|c| {
            c.is_divisible_u(4)
                .then(|| Int::from(c / 4))
                .ok_or_else(|| Error::Shape("middle T coefficient is not even".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyZ::new(coeffs))
}
