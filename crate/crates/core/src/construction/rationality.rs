use crate::arith::{PolyQ, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rationality {
    Rational,
    /// The degree test does not decide; the rank formula then rests on
    /// Tate's conjecture for the surface.
    Undetermined,
}

fn deg(p: &PolyQ) -> usize {
    p.degree().unwrap_or(0)
}

/// Degree test for y^2 = x^3 + A(T) x + B(T).
pub fn classify_rationality(short_a: &PolyQ, short_b: &PolyQ) -> Result<Rationality> {
    // -16 (4 A^3 + 27 B^2)
    let disc =
        (&short_a.pow(3).scale(&Rat::from(4)) + &(short_b * short_b).scale(&Rat::from(27))).scale(&Rat::from(-16));
    if disc.is_zero() {
        return Err(Error::Singular("4A^3 + 27B^2 vanishes identically".into()));
    }
    let (da, db) = (3 * deg(short_a), 2 * deg(short_b));
    let m = da.max(db);
    if 0 < m && m < 12 {
        return Ok(Rationality::Rational);
    }
    // T^12 disc(1/T) has no zero at T = 0 exactly when disc has degree 12.
    if da == 12 && db == 12 && disc.degree() == Some(12) {
        return Ok(Rationality::Rational);
    }
    Ok(Rationality::Undetermined)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> PolyQ {
        PolyQ::from_i64s(v)
    }

    #[test]
    fn degree_cases() {
        assert_eq!(classify_rationality(&p(&[1, 0, 0, 1]), &p(&[0, 0, 0, 0, 0, 1])).unwrap(), Rationality::Rational);
        // A = T^4, B = T^6 + 1: disc degree 12
        assert_eq!(
            classify_rationality(&p(&[0, 0, 0, 0, 1]), &p(&[1, 0, 0, 0, 0, 0, 1])).unwrap(),
            Rationality::Rational
        );
        // A = -3 T^4, B = 2 T^6 + 1: the T^12 terms cancel
        assert_eq!(
            classify_rationality(&p(&[0, 0, 0, 0, -3]), &p(&[1, 0, 0, 0, 0, 0, 2])).unwrap(),
            Rationality::Undetermined
        );
        assert_eq!(classify_rationality(&p(&[0, 0, 0, 0, 0, 1]), &p(&[1])).unwrap(), Rationality::Undetermined);
        // constant curve
        assert_eq!(classify_rationality(&p(&[1]), &p(&[1])).unwrap(), Rationality::Undetermined);
        assert!(classify_rationality(&p(&[]), &p(&[])).is_err());
    }
}
