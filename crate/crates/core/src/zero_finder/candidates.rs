//! A finite grid of points that provably contains every zero of the field,
//! from resultants of the moment-kernel sign products.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact_arith::rational::{dyadic_ceil, dyadic_floor};
use crate::exact_arith::resultant::{resultant_x, resultant_y};
use crate::exact_arith::{rat, sturm_isolate, IsolatingInterval, Rational, SturmChain, UniPoly};
use crate::field_core::ChargeSystem;
use crate::sign_product::{moment_half_products, DEFAULT_MAX_CHARGES};

use super::{axis_zeros, CertifiedZero, Rect, SearchOptions, ZeroKind};

/// Resultants whose predicted degree exceeds this are not attempted.
pub const RESULTANT_DEGREE_BUDGET: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub x: IsolatingInterval,
    /// Root `w = y^2 > 0`; `None` for a point on the axis.
    pub w: Option<IsolatingInterval>,
}

impl Candidate {
    /// Approximate `(x, |y|)`.
    pub fn approx(&self) -> (f64, f64) {
        (self.x.approx(), self.w.as_ref().map_or(0.0, |w| w.approx().max(0.0).sqrt()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub candidates: Vec<Candidate>,
    /// Squarefree resultant in `x` (after eliminating `w`).
    pub x_poly: UniPoly,
    /// Squarefree resultant in `w = y^2` (after eliminating `x`).
    pub w_poly: UniPoly,
    /// Rectangle holding every candidate; absent when elimination failed.
    pub enclosing_box: Option<Rect>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateSummary {
    pub count: usize,
    pub x_resultant_degree: usize,
    pub w_resultant_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosing_box: Option<Rect>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CandidateSet {
    pub fn summary(&self) -> CandidateSummary {
        CandidateSummary {
            count: self.candidates.len(),
            x_resultant_degree: self.x_poly.degree().unwrap_or(0),
            w_resultant_degree: self.w_poly.degree().unwrap_or(0),
            enclosing_box: self.enclosing_box.clone(),
            note: self.note.clone(),
        }
    }

    /// The zero's box meets a root of both resultants (exact Sturm counts).
    pub fn covers(&self, z: &CertifiedZero) -> bool {
        if z.kind == ZeroKind::Axis {
            return self
                .candidates
                .iter()
                .any(|c| c.w.is_none() && c.x.lo <= z.rect.x_hi && z.rect.x_lo <= c.x.hi);
        }
        let has_root = |p: &UniPoly, lo: &Rational, hi: &Rational| {
            if p.is_zero() || p.is_constant() {
                return false;
            }
            p.sign_at(lo) == 0 || SturmChain::new(p).count_half_open(lo, hi) > 0
        };
        let (ylo, yhi) = if z.rect.y_lo.is_positive() {
            (z.rect.y_lo.clone(), z.rect.y_hi.clone())
        } else {
            (-z.rect.y_hi.clone(), -z.rect.y_lo.clone())
        };
        has_root(&self.x_poly, &z.rect.x_lo, &z.rect.x_hi) && has_root(&self.w_poly, &(&ylo * &ylo), &(&yhi * &yhi))
    }
}

/// Smallest integer `c >= 0` with `c^2 >= w`.
fn sqrt_ceil(w: &Rational) -> Rational {
    let (mut lo, mut hi) = (Rational::zero(), w.ceil() + Rational::one());
    while &hi - &lo > Rational::one() {
        let mid = ((&lo + &hi) / rat(2, 1)).floor();
        if &(&mid * &mid) >= w {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if &(&lo * &lo) >= w {
        lo
    } else {
        hi
    }
}

/// Candidate grid, or `None` when the system is too large for elimination.
pub fn exhaustive_resultant_candidates(sys: &ChargeSystem, opts: &SearchOptions) -> Option<CandidateSet> {
    if sys.len() > DEFAULT_MAX_CHARGES {
        return None;
    }
    let (u, v) = moment_half_products(sys).ok()?;
    let predicted = u.degree_x().unwrap_or(0) * v.degree_y().unwrap_or(0)
        + u.degree_y().unwrap_or(0) * v.degree_x().unwrap_or(0);
    if predicted > RESULTANT_DEGREE_BUDGET {
        return None;
    }

    let axis: Vec<Candidate> = axis_zeros(sys, &opts.target_width())
        .into_iter()
        .map(|z| Candidate {
            x: if z.exact {
                IsolatingInterval::exact(z.rect.x_lo.clone(), UniPoly::x())
            } else {
                IsolatingInterval { lo: z.rect.x_lo.clone(), hi: z.rect.x_hi.clone(), poly: UniPoly::x() }
            },
            w: None,
        })
        .collect();

    let (rx, rw) = if sys.len() == 1 {
        // U is a nonzero constant: no off-axis points at all
        (UniPoly::one(), UniPoly::one())
    } else {
        (resultant_y(&u, &v), resultant_x(&u, &v))
    };
    if rx.is_zero() || rw.is_zero() {
        return Some(CandidateSet {
            candidates: axis,
            x_poly: rx,
            w_poly: rw,
            enclosing_box: None,
            note: Some("moment-kernel products share a factor; elimination inconclusive".into()),
        });
    }
    let rx = rx.squarefree_part().primitive();
    let rw = rw.squarefree_part().primitive();
    let x_roots = if rx.is_constant() {
        Vec::new()
    } else {
        let b = rx.cauchy_bound();
        sturm_isolate(&rx, &-b.clone(), &b).ok()?
    };
    let w_roots = if rw.is_constant() {
        Vec::new()
    } else {
        let b = rw.cauchy_bound();
        sturm_isolate(&rw, &Rational::zero(), &b).ok()?
    };

    let mut candidates = axis;
    for x in &x_roots {
        for w in &w_roots {
            candidates.push(Candidate { x: x.clone(), w: Some(w.clone()) });
        }
    }

    // every candidate and every charge, plus a unit margin
    let mut x_lo = sys.min_position().clone();
    let mut x_hi = sys.max_position().clone();
    let mut w_hi = Rational::zero();
    for c in &candidates {
        x_lo = x_lo.min(c.x.lo.clone());
        x_hi = x_hi.max(c.x.hi.clone());
        if let Some(w) = &c.w {
            w_hi = w_hi.max(w.hi.clone());
        }
    }
    let y_hi = sqrt_ceil(&w_hi) + Rational::one();
    let one = Rational::one();
    let enclosing = Rect::new(
        dyadic_floor(&(x_lo - &one), 0),
        dyadic_ceil(&(x_hi + &one), 0),
        -y_hi.clone(),
        y_hi,
    );
    Some(CandidateSet {
        candidates,
        x_poly: rx,
        w_poly: rw,
        enclosing_box: Some(enclosing),
        note: None,
    })
}
