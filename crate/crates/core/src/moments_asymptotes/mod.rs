//! Moments of a charge system, the polynomial families governing where the
//! zero sets can escape to infinity, and exact checks of their root
//! structure.

mod directions;
mod families;
mod moments;
mod verify;

pub use directions::{
    asymptote_directions, AlgebraicDirection, DirectionDomain, DirectionReport, DirectionSlope,
    Verdict,
};
pub use families::{build_asymptote_polys, derivative_over_power, AsymptotePolynomials};
pub use moments::{critical_index, moments, CriticalIndex, MomentVector};
pub use verify::{
    verify_cd_derivative_link, verify_p_from_q_identity, verify_interlacing, verify_inversion,
    verify_no_common_cd_root, VerificationEntry, VerificationReport, DEFAULT_L_MAX,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsymptoteError {
    /// Cannot happen for a valid system; a Vandermonde argument rules it out.
    #[error("invariant violation: every moment up to index {0} vanishes")]
    AllMomentsVanish(usize),
}
