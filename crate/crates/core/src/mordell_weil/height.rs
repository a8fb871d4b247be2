//! Canonical heights, normalized so that the generator of 37a has height
//! about 0.0256 (half the convention that gives 0.0511).
//!
//! The archimedean part is Tate's series on a translate of the minimal model
//! whose real points all have x >= 2; the finite part is log of the
//! denominator plus the local corrections at primes where P reduces to the
//! singular point.

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::Float;

use crate::arith::factor::{factor, valuation};
use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::transforms::{minimal_model, Isomorphism, WeierstrassQ};

use super::point::CurvePoint;
use super::torsion::torsion_check;

pub const MIN_PRECISION_BITS: u32 = 32;
pub const MAX_PRECISION_BITS: u32 = 4096;
pub const DEFAULT_PRECISION_BITS: u32 = 128;

const GUARD_BITS: u32 = 64;

#[derive(Clone, Debug)]
pub struct CanonicalHeight {
    pub value: Float,
    /// Set when the point is torsion; `value` is then exactly 0.
    pub torsion_order: Option<u32>,
}

impl CanonicalHeight {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Everything about a curve that heights of its points share.
#[derive(Clone, Debug)]
pub struct HeightContext {
    curve: WeierstrassQ,
    minimal: WeierstrassQ,
    to_minimal: Isomorphism,
    a: [Int; 5],
    b: [Int; 4],
    c4: Int,
    disc: Int,
    /// Integer r with every real x on the minimal model at least r + 2.
    shift: Int,
    shifted_b: [Float; 4],
    precision: u32,
    working: u32,
}

fn check_precision(bits: u32) -> Result<()> {
    if !(MIN_PRECISION_BITS..=MAX_PRECISION_BITS).contains(&bits) {
        return Err(Error::Precision(format!(
            "{bits} bits requested; supported range is {MIN_PRECISION_BITS}..={MAX_PRECISION_BITS}"
        )));
    }
    Ok(())
}

fn rat_to_int(r: &Rat) -> Int {
    r.numer().clone()
}

/// 4x^3 + b2 x^2 + 2 b4 x + b6 evaluated in floating point.
fn two_torsion_cubic(b: &[Float; 3], x: &Float) -> Float {
    let prec = x.prec();
    let mut v = Float::with_val(prec, x * 4u32) + &b[0];
    v *= x;
    v += Float::with_val(prec, &b[1] * 2u32);
    v *= x;
    v + &b[2]
}

/// An integer strictly below the smallest real root of 4x^3 + b2 x^2 + 2 b4 x + b6,
/// with room to spare.
fn archimedean_shift(b2: &Int, b4: &Int, b6: &Int) -> Int {
    let bits = [b2, b4, b6].iter().map(|v| v.significant_bits()).max().unwrap_or(0);
    let prec = 2 * bits + 128;
    let b = [Float::with_val(prec, b2), Float::with_val(prec, b4), Float::with_val(prec, b6)];
    let bound = {
        let m = [b2, &Int::from(b4 * 2u32), b6].iter().map(|v| Int::from(v.abs_ref())).max().unwrap();
        Float::with_val(prec, m / 4u32 + 2u32)
    };
    let lo0 = Float::with_val(prec, -&bound);
    let hi0 = bound.clone();
    // critical points of the cubic: 12x^2 + 2 b2 x + 2 b4
    let dd = Int::from(b2.square_ref()) * 4u32 - Int::from(b4 * 96u32);
    let (mut lo, mut hi) = if dd.cmp0() != Ordering::Greater {
        (lo0, hi0)
    } else {
        let sq = Float::with_val(prec, &dd).sqrt();
        let c1 = Float::with_val(prec, -Float::with_val(prec, Int::from(b2 * 2u32)) - &sq) / 24u32;
        if two_torsion_cubic(&b, &c1).cmp0() != Some(Ordering::Less) {
            (lo0, c1)
        } else {
            let c2 = Float::with_val(prec, -Float::with_val(prec, Int::from(b2 * 2u32)) + &sq) / 24u32;
            (c2, hi0)
        }
    };
    for _ in 0..(4 * prec) {
        if Float::with_val(prec, &hi - &lo) < 0.25 {
            break;
        }
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        if two_torsion_cubic(&b, &mid).cmp0() == Some(Ordering::Less) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let floor = lo.floor().to_integer().expect("finite root bound");
    floor - 2u32
}

impl HeightContext {
    pub fn new(curve: &WeierstrassQ, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        let (minimal, to_minimal) = minimal_model(curve)?;
        let a: [Int; 5] = std::array::from_fn(|i| rat_to_int(&minimal.coeffs()[i]));
        let b =
            [rat_to_int(minimal.b2()), rat_to_int(minimal.b4()), rat_to_int(minimal.b6()), rat_to_int(minimal.b8())];
        let c4 = rat_to_int(minimal.c4());
        let disc = rat_to_int(minimal.discriminant());
        let r = archimedean_shift(&b[0], &b[1], &b[2]);
        let [b2, b4, b6, b8] = &b;
        let r2 = Int::from(r.square_ref());
        let r3 = Int::from(&r2 * &r);
        let r4 = Int::from(r2.square_ref());
        let sb2 = Int::from(b2 + Int::from(&r * 12u32));
        let sb4 = Int::from(b4 + Int::from(&r * b2)) + Int::from(&r2 * 6u32);
        let sb6 = Int::from(b6 + Int::from(&r * b4) * 2u32) + Int::from(&r2 * b2) + Int::from(&r3 * 4u32);
        let sb8 = Int::from(b8 + Int::from(&r * b6) * 3u32)
            + Int::from(&r2 * b4) * 3u32
            + Int::from(&r3 * b2)
            + Int::from(&r4 * 3u32);
        let working = precision_bits + GUARD_BITS;
        let shifted_b = [sb2, sb4, sb6, sb8].map(|v| Float::with_val(working, v));
        Ok(HeightContext {
            curve: curve.clone(),
            minimal,
            to_minimal,
            a,
            b,
            c4,
            disc,
            shift: r,
            shifted_b,
            precision: precision_bits,
            working,
        })
    }

    pub fn curve(&self) -> &WeierstrassQ {
        &self.curve
    }

    pub fn minimal_model(&self) -> (&WeierstrassQ, &Isomorphism) {
        (&self.minimal, &self.to_minimal)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Archimedean local height of an affine point of the minimal model.
    fn lambda_infinity(&self, x: &Rat) -> Float {
        let wp = self.working;
        let xs = Float::with_val(wp, x - Rat::from(&self.shift));
        debug_assert!(xs > 1);
        let [b2, b4, b6, b8] = &self.shifted_b;
        let mut t = Float::with_val(wp, xs.recip_ref());
        let mut sum = Float::with_val(wp, 0);
        let mut weight = Float::with_val(wp, 1);
        let terms = wp / 2 + 8;
        for _ in 0..terms {
            let t2 = Float::with_val(wp, t.square_ref());
            let t3 = Float::with_val(wp, &t2 * &t);
            let t4 = Float::with_val(wp, t2.square_ref());
            let w = Float::with_val(wp, &t * 4u32)
                + Float::with_val(wp, b2 * &t2)
                + Float::with_val(wp, b4 * &t3) * 2u32
                + Float::with_val(wp, b6 * &t4);
            let z = Float::with_val(wp, 1)
                - Float::with_val(wp, b4 * &t2)
                - Float::with_val(wp, b6 * &t3) * 2u32
                - Float::with_val(wp, b8 * &t4);
            sum += Float::with_val(wp, z.ln_ref()) * &weight;
            weight /= 4u32;
            t = w / z;
        }
        Float::with_val(wp, xs.ln_ref()) / 2u32 + sum / 8u32
    }

    /// Non-archimedean contribution: log of the denominator plus corrections
    /// at primes where the point meets the singular point of the reduction.
    fn lambda_finite(&self, x: &Rat, y: &Rat) -> Result<Float> {
        let wp = self.working;
        let d = x.denom().clone().sqrt();
        let an = x.numer().clone();
        let bn = Rat::from(y * Rat::from(d.clone().pow(3))).numer().clone();
        let [a1, a2, a3, a4, _] = &self.a;
        let [b2, b4, b6, b8] = &self.b;
        let d2 = Int::from(d.square_ref());
        let d3 = Int::from(&d2 * &d);
        let d4 = Int::from(d2.square_ref());
        let psi2 = Int::from(&bn * 2u32) + Int::from(a1 * &an) * &d + Int::from(a3 * &d3);
        let slope = Int::from(an.square_ref()) * 3u32 + Int::from(a2 * &an) * &d2 * 2u32 + Int::from(a4 * &d4)
            - Int::from(a1 * &bn) * &d;
        let g = Int::from(psi2.gcd_ref(&slope)).gcd(&self.disc);
        let mut total = Float::with_val(wp, d.clone()).ln();
        if g == 1 {
            return Ok(total);
        }
        let a2n = Int::from(an.square_ref());
        let psi3 = Int::from(&a2n * &a2n) * 3u32
            + Int::from(b2 * Int::from(&a2n * &an)) * &d2
            + Int::from(b4 * &a2n) * &d4 * 3u32
            + Int::from(b6 * &an) * Int::from(&d4 * &d2) * 3u32
            + Int::from(b8 * Int::from(d4.square_ref()));
        for (p, _) in factor(&g)? {
            if d.is_divisible(&p) {
                continue;
            }
            let logp = Float::with_val(wp, &p).ln();
            let n = valuation(&self.disc, &p) as i64;
            let v2 = valuation(&psi2, &p) as i64;
            let correction = if valuation(&self.c4, &p) == 0 {
                // multiplicative: M = min(v(psi2), N/2)
                let m = Rat::from(v2).min(Rat::from((n, 2)));
                let num = Rat::from(&m * (Rat::from(n) - &m)) / Rat::from(2 * n);
                Float::with_val(wp, &num) * &logp
            } else {
                let v3 = if psi3.cmp0() == Ordering::Equal { i64::MAX } else { valuation(&psi3, &p) as i64 };
                if v3 >= 3 * v2 {
                    Float::with_val(wp, v2) / 3u32 * &logp
                } else {
                    Float::with_val(wp, v3) / 8u32 * &logp
                }
            };
            total -= correction;
        }
        Ok(total)
    }

    /// ĥ(P) for P on the context's curve (not the minimal model).
    pub fn canonical_height(&self, p: &CurvePoint) -> Result<CanonicalHeight> {
        if !self.curve.contains(p) {
            return Err(Error::NotOnCurve(format!("{p}")));
        }
        let zero = || CanonicalHeight { value: Float::with_val(self.precision, 0), torsion_order: None };
        let q = self.to_minimal.map_point(p);
        let CurvePoint::Affine { x, y } = &q else {
            return Ok(CanonicalHeight { torsion_order: Some(1), ..zero() });
        };
        let h = self.lambda_infinity(x) + self.lambda_finite(x, y)?;
        // Torsion points come out as rounding noise; confirm with the group law.
        let noise = Float::with_val(self.working, Float::i_exp(1, -(self.precision as i32) / 2));
        if Float::with_val(self.working, h.abs_ref()) < noise {
            let report = torsion_check(&self.minimal, &q)?;
            if let Some(n) = report.order {
                return Ok(CanonicalHeight { torsion_order: Some(n), ..zero() });
            }
        }
        Ok(CanonicalHeight { value: Float::with_val(self.precision, h), torsion_order: None })
    }

    /// ⟨P, Q⟩ = (ĥ(P + Q) - ĥ(P) - ĥ(Q)) / 2.
    pub fn height_pairing(&self, p: &CurvePoint, q: &CurvePoint) -> Result<Float> {
        let sum = self.curve.add_checked(p, q)?;
        let hpq = self.canonical_height(&sum)?.value;
        let hp = self.canonical_height(p)?.value;
        let hq = self.canonical_height(q)?.value;
        Ok(Float::with_val(self.precision, hpq - hp - hq) / 2u32)
    }
}

pub fn canonical_height(curve: &WeierstrassQ, p: &CurvePoint, precision_bits: u32) -> Result<CanonicalHeight> {
    HeightContext::new(curve, precision_bits)?.canonical_height(p)
}

pub fn height_pairing(curve: &WeierstrassQ, p: &CurvePoint, q: &CurvePoint, precision_bits: u32) -> Result<Float> {
    HeightContext::new(curve, precision_bits)?.height_pairing(p, q)
}

/// Naive logarithmic height ½ log max(|num x|, den x), the quantity whose
/// limit along 2^n P defines ĥ.
pub fn naive_height(p: &CurvePoint) -> f64 {
    match p.x() {
        None => 0.0,
        Some(x) => {
            let num = Int::from(x.numer().abs_ref());
            let h = if num > *x.denom() { num } else { x.denom().clone() };
            crate::arith::ln_abs_int(&h) / 2.0
        }
    }
}
