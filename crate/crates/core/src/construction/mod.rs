//! Curve families over Q(T) and the reference catalog.

mod catalog;
mod higher;
mod quartic;
mod rank6;
mod rationality;
mod surface;

pub use catalog::{biquadratic_surface, catalog, catalog_entry, rank8_abc, CatalogEntry, CATALOG_NAMES};
pub use higher::{fiber_in_t, higher_degree_d1_d2, HigherDegreeReport};
pub use quartic::{quartic_special_points, quartic_variant_check, QuarticVariantReport, SpecialCase, SpecialPoint};
pub use rank6::{
    admissibility_check, rank6_to_weierstrass, roots_to_elementary, solve_rank6, AdmissibilityReport, Rank6Params,
    Rank6Weierstrass,
};
pub use rationality::{classify_rationality, Rationality};
pub use surface::{RatPoint, RatPointQT, SurfaceForm, SurfaceQT};
