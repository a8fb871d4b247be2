//! Group law, canonical heights and independence tests on E(Q).

mod gram;
mod height;
mod point;
mod torsion;

pub use gram::{
    gram, gram_in_context, gram_with_tau, independence_test, match_normalization, HeightGram, IndependenceReport,
    NormalizationMatch, Relation, DEFAULT_TAU, RESIDUAL_GAP,
};
pub use height::{
    canonical_height, height_pairing, naive_height, CanonicalHeight, HeightContext, DEFAULT_PRECISION_BITS,
    MAX_PRECISION_BITS, MIN_PRECISION_BITS,
};
pub use point::CurvePoint;
pub use torsion::{count_points_mod_p, torsion_check, TorsionReport, MAX_TORSION_ORDER};
