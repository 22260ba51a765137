//! Zero sets of the planar field generated by point charges on a line.

pub mod cli_report;
pub mod exact_arith;
pub mod field_core;
pub mod moments_asymptotes;
pub mod sign_product;
pub mod zero_finder;

use exact_arith::{format_rational, Rational};

/// Rationals serialize as `"p/q"` strings so nothing is lost to floats.
pub(crate) fn serde_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}
