//! Coordinate changes: Weierstrass isomorphisms, quartic-to-cubic maps,
//! specialization of surfaces to fibers, and minimal models.

mod minimal;
mod quartic;
mod specialize;
mod weierstrass;

pub use minimal::minimal_model;
pub use quartic::{
    depress_monic, depressed_quartic_to_cubic, leading_square_normalize, leading_square_root_qt, normalize_with,
    quartic_contains, square_constant_coefficients, square_constant_quartic_to_cubic, DepressedCubic, Depression,
    NormalizedQuartic, PointMap, QuarticCoeffs, QuarticPoint,
};
pub use specialize::{specialize, Fiber, Route};
pub use weierstrass::{Isomorphism, WeierstrassQ};
