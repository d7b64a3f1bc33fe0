//! Exact arithmetic: rationals, univariate and bivariate polynomials,
//! resultants and gcds, curve normalization, implicitization and the local
//! equation at infinity.

pub mod bipoly;

pub mod field;
pub mod parse;
pub mod render;
pub mod resultant;
pub mod upoly;

pub use bipoly::BiPoly;
pub use field::{q, Field, Rationals, Q};
pub use upoly::UPoly;
pub mod curve;

pub use curve::{global_int, implicitize, localize_at_infinity, normalize, CurveNormalForm};
