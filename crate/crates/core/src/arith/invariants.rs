use super::Coeff;

/// Standard b-, c-invariants and discriminant of a long Weierstrass equation
/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, over any coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants<C> {
    pub b2: C,
    pub b4: C,
    pub b6: C,
    pub b8: C,
    pub c4: C,
    pub c6: C,
    pub disc: C,
}

pub fn weierstrass_invariants<C: Coeff>(a: &[C; 5]) -> Invariants<C> {
    let [a1, a2, a3, a4, a6] = a;
    let k = |v: i64| C::from_i64(v);
    let b2 = a1.mul_ref(a1).add_ref(&k(4).mul_ref(a2));
    let b4 = k(2).mul_ref(a4).add_ref(&a1.mul_ref(a3));
    let b6 = a3.mul_ref(a3).add_ref(&k(4).mul_ref(a6));
    let b8 = a1
        .mul_ref(a1)
        .mul_ref(a6)
        .add_ref(&k(4).mul_ref(a2).mul_ref(a6))
        .sub_ref(&a1.mul_ref(a3).mul_ref(a4))
        .add_ref(&a2.mul_ref(a3).mul_ref(a3))
        .sub_ref(&a4.mul_ref(a4));
    let b2sq = b2.mul_ref(&b2);
    let c4 = b2sq.sub_ref(&k(24).mul_ref(&b4));
    let c6 = k(36).mul_ref(&b2).mul_ref(&b4).sub_ref(&b2sq.mul_ref(&b2)).sub_ref(&k(216).mul_ref(&b6));
    let disc = k(9)
        .mul_ref(&b2)
        .mul_ref(&b4)
        .mul_ref(&b6)
        .sub_ref(&b2sq.mul_ref(&b8))
        .sub_ref(&k(8).mul_ref(&b4).mul_ref(&b4).mul_ref(&b4))
        .sub_ref(&k(27).mul_ref(&b6).mul_ref(&b6));
    Invariants { b2, b4, b6, b8, c4, c6, disc }
}

/// Invariants I, J of the binary quartic a x^4 + b x^3 + c x^2 + d x + e.
/// The curve y^2 = quartic has Jacobian Y^2 = X^3 - 27 I X - 27 J.
pub fn quartic_invariants<C: Coeff>(q: &[C; 5]) -> (C, C) {
    let [e, d, c, b, a] = q;
    let k = |v: i64| C::from_i64(v);
    let i = k(12).mul_ref(a).mul_ref(e).sub_ref(&k(3).mul_ref(b).mul_ref(d)).add_ref(&c.mul_ref(c));
    let j = k(72)
        .mul_ref(a)
        .mul_ref(c)
        .mul_ref(e)
        .add_ref(&k(9).mul_ref(b).mul_ref(c).mul_ref(d))
        .sub_ref(&k(27).mul_ref(a).mul_ref(d).mul_ref(d))
        .sub_ref(&k(27).mul_ref(e).mul_ref(b).mul_ref(b))
        .sub_ref(&k(2).mul_ref(c).mul_ref(c).mul_ref(c));
    (i, j)
}
