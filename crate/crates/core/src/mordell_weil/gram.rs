//! Height-pairing matrices, regulators and numerical independence.

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::transforms::WeierstrassQ;

use super::height::HeightContext;
use super::point::CurvePoint;
use super::torsion::torsion_check;

pub const DEFAULT_TAU: f64 = 1e-6;
/// Rejected pivots must sit this far below the smallest accepted one.
pub const RESIDUAL_GAP: f64 = 1e-3;
const MAX_RELATION_MULTIPLIER: i64 = 24;

#[derive(Clone, Debug)]
pub struct HeightGram {
    pub points: Vec<CurvePoint>,
    pub matrix: Vec<Vec<f64>>,
    pub det: f64,
    pub numerical_rank: usize,
    pub precision: u32,
    pub tau: f64,
    /// Indices of the points chosen as pivots, in elimination order.
    pub pivots: Vec<usize>,
    /// Pivot values accepted, in elimination order.
    pub accepted_pivots: Vec<f64>,
    /// Largest remaining diagonal entry when elimination stopped (0 at full rank).
    pub largest_rejected: f64,
    entries: Vec<Vec<Float>>,
}

impl HeightGram {
    pub fn entries(&self) -> &[Vec<Float>] {
        &self.entries
    }

    pub fn det_float(&self) -> Float {
        determinant(&self.entries, self.precision)
    }
}

fn determinant(m: &[Vec<Float>], prec: u32) -> Float {
    let n = m.len();
    let mut a: Vec<Vec<Float>> = m.iter().map(|r| r.iter().map(|v| Float::with_val(prec, v)).collect()).collect();
    let mut det = Float::with_val(prec, 1);
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| a[i][k].clone().abs().partial_cmp(&a[j][k].clone().abs()).unwrap()).unwrap();
        if a[piv][k].is_zero() {
            return Float::with_val(prec, 0);
        }
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= &a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = Float::with_val(prec, &row[k] / &pivot[k]);
            for (x, p) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= Float::with_val(prec, &f * p);
            }
        }
    }
    det
}

/// Symmetric complete pivoting on the diagonal. Returns the pivot order,
/// accepted pivot values and the largest diagonal left over.
fn pivoted_rank(m: &[Vec<Float>], prec: u32, tau: f64) -> (Vec<usize>, Vec<f64>, f64) {
    let n = m.len();
    let mut a: Vec<Vec<Float>> = m.iter().map(|r| r.iter().map(|v| Float::with_val(prec, v)).collect()).collect();
    let max_diag = (0..n).map(|i| a[i][i].to_f64()).fold(0.0, f64::max);
    let threshold = tau * max_diag;
    let mut free: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut values = Vec::new();
    while !free.is_empty() {
        let (pos, &k) =
            free.iter().enumerate().max_by(|(_, &i), (_, &j)| a[i][i].partial_cmp(&a[j][j]).unwrap()).unwrap();
        let pv = a[k][k].to_f64();
        if pv <= threshold || pv <= 0.0 {
            break;
        }
        free.remove(pos);
        for &i in &free {
            let f = Float::with_val(prec, &a[i][k] / &a[k][k]);
            for &j in &free {
                let sub = Float::with_val(prec, &f * &a[k][j]);
                a[i][j] -= sub;
            }
        }
        pivots.push(k);
        values.push(pv);
    }
    let rejected = free.iter().map(|&i| a[i][i].to_f64().abs()).fold(0.0, f64::max);
    (pivots, values, rejected)
}

/// Height-pairing matrix of `points` with the default threshold.
pub fn gram(curve: &WeierstrassQ, points: &[CurvePoint], precision_bits: u32) -> Result<HeightGram> {
    gram_with_tau(curve, points, precision_bits, DEFAULT_TAU)
}

pub fn gram_with_tau(curve: &WeierstrassQ, points: &[CurvePoint], precision_bits: u32, tau: f64) -> Result<HeightGram> {
    let ctx = HeightContext::new(curve, precision_bits)?;
    gram_in_context(&ctx, points, tau)
}

pub fn gram_in_context(ctx: &HeightContext, points: &[CurvePoint], tau: f64) -> Result<HeightGram> {
    let curve = ctx.curve();
    for p in points {
        if !curve.contains(p) {
            return Err(Error::NotOnCurve(format!("{p}")));
        }
    }
    let prec = ctx.precision();
    let n = points.len();
    let diag: Vec<Float> =
        points.par_iter().map(|p| ctx.canonical_height(p).map(|h| h.value)).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let sums: Vec<Float> = pairs
        .par_iter()
        .map(|&(i, j)| ctx.canonical_height(&curve.add(&points[i], &points[j])).map(|h| h.value))
        .collect::<Result<_>>()?;
    let mut entries = vec![vec![Float::with_val(prec, 0); n]; n];
    for i in 0..n {
        entries[i][i] = diag[i].clone();
    }
    for (&(i, j), s) in pairs.iter().zip(&sums) {
        let v = Float::with_val(prec, s - &diag[i]) - &diag[j];
        let v = v / 2u32;
        entries[i][j] = v.clone();
        entries[j][i] = v;
    }
    let det = determinant(&entries, prec).to_f64();
    let (pivots, accepted_pivots, largest_rejected) = pivoted_rank(&entries, prec, tau);
    Ok(HeightGram {
        points: points.to_vec(),
        matrix: entries.iter().map(|r| r.iter().map(Float::to_f64).collect()).collect(),
        det,
        numerical_rank: pivots.len(),
        precision: prec,
        tau,
        pivots,
        accepted_pivots,
        largest_rejected,
        entries,
    })
}

/// A determinant rescaled by 2^exponent to compare against a reference value
/// computed under a different height normalization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizationMatch {
    pub exponent: i32,
    pub scaled: f64,
    pub relative_error: f64,
}

/// Picks the scaling 2^k, k in {-n, 0, n} for an n x n Gram matrix, that
/// brings `det` closest to `target`.
pub fn match_normalization(det: f64, dim: usize, target: f64) -> NormalizationMatch {
    let n = dim as i32;
    [0, n, -n]
        .into_iter()
        .map(|k| {
            let scaled = det * 2f64.powi(k);
            NormalizationMatch { exponent: k, scaled, relative_error: ((scaled - target) / target).abs() }
        })
        .min_by(|a, b| a.relative_error.total_cmp(&b.relative_error))
        .expect("three candidates")
}

/// An integer relation Σ c_i P_i = torsion among the input points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub coeffs: Vec<i64>,
    /// Order of Σ c_i P_i when the relation was confirmed with the group law.
    pub torsion_order: Option<u32>,
}

impl Relation {
    pub fn verified(&self) -> bool {
        self.torsion_order.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub independent_count: usize,
    /// Indices (into the input) of a maximal independent subset.
    pub independent: Vec<usize>,
    pub relations: Vec<Relation>,
    /// True when the pivot gap is too small to separate zero from nonzero.
    pub inconclusive: bool,
    pub advice: Option<String>,
    pub gram: HeightGram,
}

/// Solves G_SS c = G_Sj for the free index j.
fn null_combination(m: &[Vec<Float>], basis: &[usize], j: usize, prec: u32) -> Option<Vec<Float>> {
    let k = basis.len();
    let mut a: Vec<Vec<Float>> = basis
        .iter()
        .map(|&r| {
            let mut row: Vec<Float> = basis.iter().map(|&c| Float::with_val(prec, &m[r][c])).collect();
            row.push(Float::with_val(prec, &m[r][j]));
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).max_by(|&x, &y| a[x][col].clone().abs().partial_cmp(&a[y][col].clone().abs()).unwrap())?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(piv, col);
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate().take(k) {
            if r == col {
                continue;
            }
            let f = Float::with_val(prec, &row[col] / &pivot[col]);
            for (x, p) in row[col..=k].iter_mut().zip(&pivot[col..=k]) {
                *x -= Float::with_val(prec, &f * p);
            }
        }
    }
    Some((0..k).map(|i| Float::with_val(prec, &a[i][k] / &a[i][i])).collect())
}

/// Smallest m <= 24 making every m c_i an integer within `tol`.
fn integer_relation(c: &[Float], tol: f64) -> Option<(i64, Vec<i64>)> {
    (1..=MAX_RELATION_MULTIPLIER).find_map(|m| {
        let mut out = Vec::with_capacity(c.len());
        for v in c {
            let s = v.to_f64() * m as f64;
            let r = s.round();
            if (s - r).abs() > tol || r.abs() > i64::MAX as f64 / 2.0 {
                return None;
            }
            out.push(r as i64);
        }
        Some((m, out))
    })
}

pub fn independence_test(
    curve: &WeierstrassQ,
    points: &[CurvePoint],
    precision_bits: u32,
    tau: f64,
) -> Result<IndependenceReport> {
    let g = gram_with_tau(curve, points, precision_bits, tau)?;
    let prec = g.precision;
    let n = points.len();
    let min_accepted = g.accepted_pivots.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut inconclusive = false;
    let mut advice = None;
    if g.numerical_rank < n && g.numerical_rank > 0 && g.largest_rejected > RESIDUAL_GAP * min_accepted {
        inconclusive = true;
        advice = Some(format!(
            "residual pivot {:.3e} is not {RESIDUAL_GAP:e} below the smallest accepted pivot {:.3e}; raise the precision or adjust tau",
            g.largest_rejected, min_accepted
        ));
    }
    let mut basis = g.pivots.clone();
    basis.sort_unstable();
    let mut relations = Vec::new();
    if !inconclusive {
        for j in (0..n).filter(|j| !basis.contains(j)) {
            let c = if basis.is_empty() {
                Vec::new()
            } else {
                match null_combination(g.entries(), &basis, j, prec) {
                    Some(c) => c,
                    None => continue,
                }
            };
            let Some((m, ints)) = integer_relation(&c, 1e-6) else {
                continue;
            };
            let mut coeffs = vec![0i64; n];
            coeffs[j] = m;
            for (&b, v) in basis.iter().zip(&ints) {
                coeffs[b] = -v;
            }
            if coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                coeffs.iter_mut().for_each(|c| *c = -*c);
            }
            let combo = curve.linear_combination(points, &coeffs);
            let torsion_order = torsion_check(curve, &combo)?.order;
            relations.push(Relation { coeffs, torsion_order });
        }
    }
    Ok(IndependenceReport {
        independent_count: g.numerical_rank,
        independent: basis,
        relations,
        inconclusive,
        advice,
        gram: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_choice() {
        let m = match_normalization(1.0, 3, 8.1);
        assert_eq!(m.exponent, 3);
        assert!((m.relative_error - 0.1 / 8.1).abs() < 1e-12);
        assert_eq!(match_normalization(2.0, 1, 2.0).exponent, 0);
    }
    use crate::arith::rat;

    fn e389() -> WeierstrassQ {
        WeierstrassQ::from_ints([0, 1, 1, -2, 0]).unwrap()
    }

    #[test]
    fn rank_two_regulator() {
        let e = e389();
        let pts = [CurvePoint::affine(rat(0, 1), rat(0, 1)), CurvePoint::affine(rat(1, 1), rat(0, 1))];
        let g = gram(&e, &pts, 128).unwrap();
        assert_eq!(g.numerical_rank, 2);
        // 389a regulator is 0.152460177943144 in the doubled normalization
        assert!((g.det * 4.0 - 0.152460177943144).abs() < 1e-12, "{}", g.det);
        assert_eq!(g.matrix[0][1], g.matrix[1][0]);
    }

    #[test]
    fn multiple_gives_relation() {
        let e = e389();
        let p = CurvePoint::affine(rat(0, 1), rat(0, 1));
        let pts = [p.clone(), e.double(&p)];
        let r = independence_test(&e, &pts, 128, DEFAULT_TAU).unwrap();
        assert_eq!(r.independent_count, 1);
        assert!(!r.inconclusive);
        assert_eq!(r.relations.len(), 1);
        assert_eq!(r.relations[0].coeffs, vec![2, -1]);
        assert!(r.relations[0].verified());
    }

    #[test]
    fn duplicate_points() {
        let e = e389();
        let p = CurvePoint::affine(rat(0, 1), rat(0, 1));
        let g = gram(&e, &[p.clone(), p], 128).unwrap();
        assert!(g.det.abs() < 1e-20);
        assert_eq!(g.numerical_rank, 1);
    }
}
