//! Elliptic surfaces over Q(T) built by the discriminant method: exact
//! arithmetic, Legendre sum identities, the rank 6 family and its relatives,
//! birational quartic-to-cubic maps, Nagao-type fiber sums, and
//! canonical-height checks on specialized fibers.

pub mod analytic;
pub mod arith;
pub mod construction;
pub mod error;
pub mod legendre;
pub mod mordell_weil;
pub mod transforms;

pub use error::{Error, Result};
