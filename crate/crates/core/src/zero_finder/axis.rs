use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact_arith::{sturm_isolate, Rational, UniPoly};
use crate::field_core::ChargeSystem;

use super::{CertifiedZero, Rect, ZeroKind};

/// Open stretch of the axis between consecutive charges; `None` bounds are
/// infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisInterval {
    pub index: usize,
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
    /// Sign of `x - x_k` on the interval.
    pub signs: Vec<i8>,
}

pub fn axis_intervals(sys: &ChargeSystem) -> Vec<AxisInterval> {
    let xs: Vec<Rational> = sys.positions().cloned().collect();
    let m = xs.len();
    (0..=m)
        .map(|j| AxisInterval {
            index: j,
            lo: (j > 0).then(|| xs[j - 1].clone()),
            hi: (j < m).then(|| xs[j].clone()),
            signs: (0..m).map(|k| if k < j { 1 } else { -1 }).collect(),
        })
        .collect()
}

/// `sum_k a_k s_k prod_{l != k} (x - x_l)^2`, the numerator of `X(x, 0)` on
/// the interval.
fn cleared_numerator(sys: &ChargeSystem, iv: &AxisInterval) -> UniPoly {
    let sq: Vec<UniPoly> = sys
        .positions()
        .map(|xl| {
            let d = UniPoly::from_coeffs(vec![-xl.clone(), Rational::one()]);
            &d * &d
        })
        .collect();
    sys.charges()
        .iter()
        .enumerate()
        .fold(UniPoly::zero(), |acc, (k, c)| {
            let others = sq
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .fold(UniPoly::one(), |p, (_, q)| &p * q);
            let coef = if iv.signs[k] > 0 {
                c.amplitude.clone()
            } else {
                -c.amplitude.clone()
            };
            &acc + &others.scale(&coef)
        })
}

/// Every zero of the field on the axis, each as an exact rational point or a
/// Sturm-isolated interval narrower than `tol`.
pub fn axis_zeros(sys: &ChargeSystem, tol: &Rational) -> Vec<CertifiedZero> {
    let mut out: Vec<CertifiedZero> = axis_intervals(sys)
        .par_iter()
        .flat_map_iter(|iv| {
            let num = cleared_numerator(sys, iv).squarefree_part();
            if num.is_constant() {
                return Vec::new();
            }
            let bound = num.cauchy_bound();
            let lo = iv.lo.clone().unwrap_or_else(|| -bound.clone());
            let hi = iv.hi.clone().unwrap_or_else(|| bound.clone());
            if lo >= hi {
                return Vec::new();
            }
            sturm_isolate(&num, &lo, &hi)
                .expect("squarefree nonconstant numerator")
                .into_iter()
                .map(|mut r| {
                    r.refine_to(tol);
                    let exact = r.is_exact();
                    CertifiedZero {
                        rect: Rect::new(r.lo, r.hi, Rational::zero(), Rational::zero()),
                        kind: ZeroKind::Axis,
                        unique: true,
                        exact,
                    }
                })
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.rect.cmp(&b.rect));
    out
}
