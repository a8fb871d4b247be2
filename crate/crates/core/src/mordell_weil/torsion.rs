use crate::arith::{int_mod_u64, odd_primes_up_to, CharTable, ModP, OddPrime};
use crate::error::{Error, Result};
use crate::transforms::{minimal_model, WeierstrassQ};

use super::point::CurvePoint;

/// Orders of rational torsion points are at most 12.
pub const MAX_TORSION_ORDER: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    /// Order of the point when it is torsion.
    pub order: Option<u32>,
    /// Good primes p with #E(F_p), used to confirm the order divides it.
    pub crosscheck: Vec<(u64, u64)>,
}

impl TorsionReport {
    pub fn is_torsion(&self) -> bool {
        self.order.is_some()
    }
}

/// #E(F_p) for an integral model and an odd prime p of good reduction.
pub fn count_points_mod_p(e: &WeierstrassQ, p: u64) -> Result<u64> {
    let odd = OddPrime::new(p)?;
    if !e.is_integral() {
        return Err(Error::Precondition("model must be integral".into()));
    }
    let disc = e.discriminant().numer().clone();
    if int_mod_u64(&disc, p) == 0 {
        return Err(Error::UnsupportedPrime(p));
    }
    let f = ModP::new(odd);
    let red = |r: &crate::arith::Rat| f.from_int(r.numer());
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let g = [red(e.b6()), f.mul(2, red(e.b4())), red(e.b2()), 4 % p];
    let chi = CharTable::new(odd);
    let mut n: i64 = 1;
    for x in 0..p {
        n += 1 + chi.chi(f.eval(&g, x)) as i64;
    }
    Ok(n as u64)
}

/// Looks for n <= 12 with nP = O, and checks any order found against
/// #E(F_p) at two good primes not dividing it.
pub fn torsion_check(e: &WeierstrassQ, p: &CurvePoint) -> Result<TorsionReport> {
    if !e.contains(p) {
        return Err(Error::NotOnCurve(format!("{p}")));
    }
    let mut order = None;
    let mut q = p.clone();
    for n in 1..=MAX_TORSION_ORDER {
        if q.is_infinity() {
            order = Some(n);
            break;
        }
        q = e.add(&q, p);
    }
    let Some(n) = order else {
        return Ok(TorsionReport { order: None, crosscheck: Vec::new() });
    };
    let (m, _) = minimal_model(e)?;
    let disc = m.discriminant().numer().clone();
    let mut crosscheck = Vec::new();
    for prime in odd_primes_up_to(1000) {
        if crosscheck.len() == 2 {
            break;
        }
        if int_mod_u64(&disc, prime) == 0 || prime % n as u64 == 0 {
            continue;
        }
        let count = count_points_mod_p(&m, prime)?;
        if count % n as u64 != 0 {
            return Err(Error::Precondition(format!("order {n} does not divide #E(F_{prime}) = {count}")));
        }
        crosscheck.push((prime, count));
    }
    Ok(TorsionReport { order: Some(n), crosscheck })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn two_torsion() {
        let e = WeierstrassQ::from_ints([0, 0, 0, 1, 0]).unwrap();
        let r = torsion_check(&e, &CurvePoint::affine(rat(0, 1), rat(0, 1))).unwrap();
        assert_eq!(r.order, Some(2));
        assert_eq!(r.crosscheck.len(), 2);
        assert_eq!(torsion_check(&e, &CurvePoint::Infinity).unwrap().order, Some(1));
    }

    #[test]
    fn five_torsion_and_counts() {
        // 11a3: y^2 + y = x^3 - x^2, (0, 0) has order 5
        let e = WeierstrassQ::from_ints([0, -1, 1, 0, 0]).unwrap();
        let r = torsion_check(&e, &CurvePoint::affine(rat(0, 1), rat(0, 1))).unwrap();
        assert_eq!(r.order, Some(5));
        // a_3 = -1, a_7 = -2 for conductor 11
        assert_eq!(count_points_mod_p(&e, 3).unwrap(), 5);
        assert_eq!(count_points_mod_p(&e, 7).unwrap(), 10);
        assert!(matches!(count_points_mod_p(&e, 11), Err(Error::UnsupportedPrime(11))));
    }

    #[test]
    fn non_torsion() {
        let e = WeierstrassQ::from_ints([0, 0, 1, -1, 0]).unwrap();
        assert_eq!(torsion_check(&e, &CurvePoint::affine(rat(0, 1), rat(0, 1))).unwrap().order, None);
    }
}
