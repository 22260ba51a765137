//! Zeros of the field: exact roots on the axis, certified boxes off it, an
//! elimination-based candidate grid and per-zero diagnostics.

mod axis;
mod candidates;
mod diagnostics;
mod krawczyk;
mod search;

pub use axis::{axis_intervals, axis_zeros, AxisInterval};
pub use candidates::{exhaustive_resultant_candidates, Candidate, CandidateSet, CandidateSummary};
pub use diagnostics::{orthogonality_diagnostics, ZeroDiagnostic};
pub use krawczyk::{certify_box, krawczyk_step, KrawczykOutcome};
pub use search::{offaxis_zeros, OffAxisResult};

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact_arith::rational::{to_f64, Rational};
use crate::exact_arith::{format_rational, rat};
use crate::field_core::{ChargeSystem, DEFAULT_PRECISION};
use crate::moments_asymptotes::moments;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZeroFinderError {
    #[error("tolerance {tol} is not below the search box width {width}")]
    ToleranceTooCoarse { tol: String, width: String },
    #[error("search box is inverted")]
    InvertedBox,
}

/// Closed rational rectangle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub y_lo: Rational,
    pub y_hi: Rational,
}

impl Rect {
    pub fn new(x_lo: Rational, x_hi: Rational, y_lo: Rational, y_hi: Rational) -> Self {
        Self { x_lo, x_hi, y_lo, y_hi }
    }

    /// `[-r, r]^2`.
    pub fn square(r: &Rational) -> Self {
        Self::new(-r.clone(), r.clone(), -r.clone(), r.clone())
    }

    pub fn is_valid(&self) -> bool {
        self.x_lo <= self.x_hi && self.y_lo <= self.y_hi
    }

    pub fn width(&self) -> Rational {
        let w = &self.x_hi - &self.x_lo;
        let h = &self.y_hi - &self.y_lo;
        if w > h {
            w
        } else {
            h
        }
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        &self.x_lo <= x && x <= &self.x_hi && &self.y_lo <= y && y <= &self.y_hi
    }

    pub fn intersects(&self, o: &Rect) -> bool {
        self.x_lo <= o.x_hi && o.x_lo <= self.x_hi && self.y_lo <= o.y_hi && o.y_lo <= self.y_hi
    }

    pub fn hull(&self, o: &Rect) -> Rect {
        Rect::new(
            self.x_lo.clone().min(o.x_lo.clone()),
            self.x_hi.clone().max(o.x_hi.clone()),
            self.y_lo.clone().min(o.y_lo.clone()),
            self.y_hi.clone().max(o.y_hi.clone()),
        )
    }

    pub fn mirrored(&self) -> Rect {
        Rect::new(
            self.x_lo.clone(),
            self.x_hi.clone(),
            -self.y_hi.clone(),
            -self.y_lo.clone(),
        )
    }

    pub fn translated_x(&self, dx: &Rational) -> Rect {
        Rect::new(&self.x_lo + dx, &self.x_hi + dx, self.y_lo.clone(), self.y_hi.clone())
    }

    pub fn center(&self) -> (Rational, Rational) {
        let two = rat(2, 1);
        ((&self.x_lo + &self.x_hi) / &two, (&self.y_lo + &self.y_hi) / two)
    }

    pub fn center_f64(&self) -> (f64, f64) {
        let (x, y) = self.center();
        (to_f64(&x), to_f64(&y))
    }
}

impl Serialize for Rect {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rect", 4)?;
        st.serialize_field("x_lo", &format_rational(&self.x_lo))?;
        st.serialize_field("x_hi", &format_rational(&self.x_hi))?;
        st.serialize_field("y_lo", &format_rational(&self.y_lo))?;
        st.serialize_field("y_hi", &format_rational(&self.y_hi))?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroKind {
    Axis,
    OffAxis,
}

/// A rectangle proved to hold exactly one zero of the field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedZero {
    #[serde(rename = "box")]
    pub rect: Rect,
    pub kind: ZeroKind,
    pub unique: bool,
    /// The zero is the rational point `(x_lo, y_lo)` itself.
    pub exact: bool,
}

impl CertifiedZero {
    pub fn x_lo(&self) -> &Rational {
        &self.rect.x_lo
    }

    pub fn width(&self) -> Rational {
        self.rect.width()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    /// Every zero of the field lies in the search box, proved by elimination.
    CertifiedWithinBox,
    /// All zeros inside the box are found; none are claimed outside it.
    HeuristicBox,
}

/// A nonvanishing low moment that keeps zeros from running off to infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionNote {
    pub moment_index: usize,
    #[serde(serialize_with = "crate::serde_rational")]
    pub value: Rational,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroSetReport {
    pub zeros: Vec<CertifiedZero>,
    pub undecided: Vec<Rect>,
    pub search_box: Rect,
    pub completeness: Completeness,
    pub count_bound: u128,
    pub moment_obstruction: Option<ObstructionNote>,
}

/// Knobs for the zero search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Working precision of the final certification, in bits.
    pub precision: u32,
    /// Reported boxes are narrower than this.
    pub tol: Rational,
    /// Boxes still unresolved at this width are reported as undecided.
    pub min_width: Rational,
    /// Half-height of the strip around the axis left to the exact solver.
    pub axis_strip: Rational,
}

impl SearchOptions {
    /// Width certified boxes are refined to: below `tol` and well below the
    /// zero tolerance `2^(-precision/2)` used for re-evaluation.
    pub fn target_width(&self) -> Rational {
        let fine = Rational::one() / Rational::from_integer(2.into()).pow(self.precision as i32 / 2 + 24);
        if self.tol < fine {
            self.tol.clone()
        } else {
            fine
        }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        let two = Rational::from_integer(2.into());
        Self {
            precision: DEFAULT_PRECISION,
            tol: Rational::one() / two.pow(40),
            min_width: Rational::one() / two.pow(40),
            axis_strip: Rational::one() / two.pow(20),
        }
    }
}

/// `9 M^2 4^M`, saturating.
pub fn count_bound(m: usize) -> u128 {
    let m = m as u128;
    let pow = 1u128.checked_shl(2 * m as u32).unwrap_or(u128::MAX);
    (9 * m * m).saturating_mul(pow)
}

pub fn count_bound_check(report: &ZeroSetReport) -> bool {
    report.zeros.len() as u128 <= report.count_bound
}

/// The first of `mu_0`, `mu_1` that does not vanish, if any. Zeros escaping
/// to infinity would force both to vanish.
pub fn unboundedness_obstruction(sys: &ChargeSystem) -> Option<ObstructionNote> {
    let mv = moments(sys);
    (0..2.min(mv.values.len()))
        .find(|&u| !mv.values[u].is_zero())
        .map(|u| ObstructionNote {
            moment_index: u,
            value: mv.values[u].clone(),
            note: format!(
                "moment mu_{u} = {} is nonzero, so the zero set of the field is bounded",
                format_rational(&mv.values[u])
            ),
        })
}

/// Default half-width of the search square, `10 (1 + x_M)`.
pub fn default_search_radius(sys: &ChargeSystem) -> Rational {
    (Rational::one() + sys.max_position()) * rat(10, 1)
}

/// Axis zeros, certified off-axis zeros and bookkeeping in one report.
///
/// When elimination is available the box is widened to enclose every
/// candidate and the result is labelled complete.
pub fn find_zeros(
    sys: &ChargeSystem,
    search_box: Option<Rect>,
    opts: &SearchOptions,
) -> Result<(ZeroSetReport, Option<CandidateSet>), ZeroFinderError> {
    let candidates = exhaustive_resultant_candidates(sys, opts);
    let user_given = search_box.is_some();
    let user_box = search_box.unwrap_or_else(|| Rect::square(&default_search_radius(sys)));
    let (rect, completeness) = match candidates.as_ref().and_then(|c| c.enclosing_box.clone()) {
        Some(b) if !user_given => (b.hull(&user_box), Completeness::CertifiedWithinBox),
        Some(b) if b.x_lo >= user_box.x_lo
            && b.x_hi <= user_box.x_hi
            && b.y_lo >= user_box.y_lo
            && b.y_hi <= user_box.y_hi =>
        {
            (user_box, Completeness::CertifiedWithinBox)
        }
        _ => (user_box, Completeness::HeuristicBox),
    };
    let mut zeros: Vec<CertifiedZero> = axis_zeros(sys, &opts.target_width())
        .into_iter()
        .filter(|z| rect.contains(&z.rect.x_lo, &Rational::zero()))
        .collect();
    let off = offaxis_zeros(sys, &rect, opts)?;
    zeros.extend(off.zeros);
    zeros.sort_by(|a, b| a.rect.cmp(&b.rect));
    let completeness = if off.undecided.is_empty() {
        completeness
    } else {
        Completeness::HeuristicBox
    };
    Ok((
        ZeroSetReport {
            zeros,
            undecided: off.undecided,
            search_box: rect,
            completeness,
            count_bound: count_bound(sys.len()),
            moment_obstruction: unboundedness_obstruction(sys),
        },
        candidates,
    ))
}
