//! Certified search for zeros off the axis by subdivision.
//!
//! Boxes are discarded when a naive or second-order Taylor enclosure of `X`,
//! `Y`, `U` or `V` excludes zero, or when the Krawczyk image misses them.
//! Surviving small boxes are handed to the multiprecision certifier. Only the
//! upper half plane is searched; zeros come in mirror pairs `(x, +-y)`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact_arith::{rat, Rational};
use crate::field_core::{kernel_box, kernel_partials_box, moment_kernels_box, ChargeData, ChargeSystem, F64Interval};

use super::krawczyk::{certify_box, krawczyk_step, Certification, KrawczykOutcome};
use super::{CertifiedZero, Rect, SearchOptions, ZeroFinderError, ZeroKind};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OffAxisResult {
    pub zeros: Vec<CertifiedZero>,
    /// Boxes that reached the minimum width without a decision.
    pub undecided: Vec<Rect>,
}

enum Step {
    Drop,
    Zero(Rect),
    Undecided(Rect),
    Split(Rect, Rect),
}

fn f64_box(r: &Rect) -> (F64Interval, F64Interval) {
    (
        F64Interval::from_rationals(&r.x_lo, &r.x_hi, 53),
        F64Interval::from_rationals(&r.y_lo, &r.y_hi, 53),
    )
}

/// Second partials of `(X, Y)` over a box, as
/// `[X_xx, X_xy, X_yy, Y_yy]`; `Y_xx = X_xy` and `Y_xy = X_yy`.
///
/// Per charge, with `u = x - x_j` and `r^2 = u^2 + y^2`:
/// `X_xx = -9u/r^5 + 15u^3/r^7`, `X_xy = -3y/r^5 + 15u^2 y/r^7`,
/// `X_yy = -3u/r^5 + 15u y^2/r^7`, `Y_yy = -9y/r^5 + 15y^3/r^7`.
fn hessian_box(data: &ChargeData<f64>, x: &F64Interval, y: &F64Interval) -> Option<[F64Interval; 4]> {
    let c = |v: f64| F64Interval::point(v);
    let y2 = y.sqr();
    let mut h = [c(0.0), c(0.0), c(0.0), c(0.0)];
    for (xj, a) in data.positions.iter().zip(&data.amplitudes) {
        let u = x.sub(xj);
        let u2 = u.sqr();
        let r2 = u2.add(&y2);
        let inv2 = r2.recip()?;
        let inv5 = inv2.sqr().mul(&inv2.sqrt());
        let inv7 = inv5.mul(&inv2);
        let terms = [
            u.mul(&c(15.0).mul(&u2).mul(&inv7).sub(&c(9.0).mul(&inv5))),
            y.mul(&c(15.0).mul(&u2).mul(&inv7).sub(&c(3.0).mul(&inv5))),
            u.mul(&c(15.0).mul(&y2).mul(&inv7).sub(&c(3.0).mul(&inv5))),
            y.mul(&c(15.0).mul(&y2).mul(&inv7).sub(&c(9.0).mul(&inv5))),
        ];
        for (acc, t) in h.iter_mut().zip(terms) {
            *acc = acc.add(&a.mul(&t));
        }
    }
    Some(h)
}

/// Second-order Taylor form about the box centre. Far from the charges the
/// terms of the field nearly cancel and the naive enclosure is useless at
/// any reasonable box size; this one is not.
fn taylor_excludes(data: &ChargeData<f64>, bx: &F64Interval, by: &F64Interval) -> bool {
    let cx = F64Interval::point(bx.mid_f64());
    let cy = F64Interval::point(by.mid_f64());
    let (Some((fx, fy)), Some(j), Some(h)) = (
        kernel_box(data, &cx, &cy, 1),
        kernel_partials_box(data, &cx, &cy, 1),
        hessian_box(data, bx, by),
    ) else {
        return false;
    };
    let (dx, dy) = (bx.sub(&cx), by.sub(&cy));
    let (dxx, dxy, dyy) = (dx.sqr(), dx.mul(&dy), dy.sqr());
    let half = F64Interval::point(0.5);
    let quad = |hxx: &F64Interval, hxy: &F64Interval, hyy: &F64Interval| {
        half.mul(&hxx.mul(&dxx)).add(&hxy.mul(&dxy)).add(&half.mul(&hyy.mul(&dyy)))
    };
    let ex = fx.add(&j.xx.mul(&dx)).add(&j.xy.mul(&dy)).add(&quad(&h[0], &h[1], &h[2]));
    let ey = fy.add(&j.yx.mul(&dx)).add(&j.yy.mul(&dy)).add(&quad(&h[1], &h[2], &h[3]));
    ex.sign().is_some() || ey.sign().is_some()
}

fn split(r: &Rect) -> (Rect, Rect) {
    let two = rat(2, 1);
    if &r.x_hi - &r.x_lo >= &r.y_hi - &r.y_lo {
        let m = (&r.x_lo + &r.x_hi) / two;
        (
            Rect::new(r.x_lo.clone(), m.clone(), r.y_lo.clone(), r.y_hi.clone()),
            Rect::new(m, r.x_hi.clone(), r.y_lo.clone(), r.y_hi.clone()),
        )
    } else {
        let m = (&r.y_lo + &r.y_hi) / two;
        (
            Rect::new(r.x_lo.clone(), r.x_hi.clone(), r.y_lo.clone(), m.clone()),
            Rect::new(r.x_lo.clone(), r.x_hi.clone(), m, r.y_hi.clone()),
        )
    }
}

/// Widens a box about its centre by `factor`.
fn inflate(r: &Rect, factor: &Rational) -> Rect {
    let (cx, cy) = r.center();
    let hx = (&r.x_hi - &r.x_lo) * factor / rat(2, 1);
    let hy = (&r.y_hi - &r.y_lo) * factor / rat(2, 1);
    Rect::new(&cx - &hx, &cx + &hx, &cy - &hy, &cy + &hy)
}

fn examine(sys: &ChargeSystem, data: &ChargeData<f64>, r: &Rect, opts: &SearchOptions) -> Step {
    let (bx, by) = f64_box(r);
    let width = r.width();
    let Some((x, y)) = kernel_box(data, &bx, &by, 1) else {
        return if width < opts.min_width {
            Step::Undecided(r.clone())
        } else {
            let (a, b) = split(r);
            Step::Split(a, b)
        };
    };
    if x.sign().is_some() || y.sign().is_some() {
        return Step::Drop;
    }
    if taylor_excludes(data, &bx, &by) {
        return Step::Drop;
    }
    if let Some((u, v)) = moment_kernels_box(data, &bx, &by) {
        if u.sign().is_some() || v.sign().is_some() {
            return Step::Drop;
        }
    }
    match krawczyk_step(data, &bx, &by) {
        KrawczykOutcome::Empty => return Step::Drop,
        KrawczykOutcome::Unique(..) => match certify_box(sys, r, opts) {
            Certification::Unique(z) => return Step::Zero(z),
            Certification::Empty => return Step::Drop,
            Certification::Unknown => {}
        },
        KrawczykOutcome::Unknown(..) => {}
    }
    if width < opts.min_width {
        // a zero sitting on a cut line certifies in a slightly larger box
        let wide = inflate(r, &rat(3, 2));
        return match certify_box(sys, &wide, opts) {
            Certification::Unique(z) => Step::Zero(z),
            Certification::Empty => Step::Drop,
            Certification::Unknown => Step::Undecided(r.clone()),
        };
    }
    let (a, b) = split(r);
    Step::Split(a, b)
}

/// Removes repeated enclosures of the same zero: overlapping boxes whose
/// hull certifies a unique zero are collapsed.
fn dedup(sys: &ChargeSystem, mut zs: Vec<Rect>, opts: &SearchOptions) -> Vec<Rect> {
    zs.sort();
    let mut out: Vec<Rect> = Vec::new();
    'next: for z in zs {
        for kept in out.iter_mut() {
            let near = inflate(kept, &rat(4, 1));
            if near.intersects(&z) {
                if let Certification::Unique(h) = certify_box(sys, &inflate(&kept.hull(&z), &rat(2, 1)), opts) {
                    *kept = h;
                    continue 'next;
                }
            }
        }
        out.push(z);
    }
    out
}

/// Certified zeros with `|y| >= axis_strip` inside `rect`.
pub fn offaxis_zeros(
    sys: &ChargeSystem,
    rect: &Rect,
    opts: &SearchOptions,
) -> Result<OffAxisResult, ZeroFinderError> {
    if !rect.is_valid() {
        return Err(ZeroFinderError::InvertedBox);
    }
    let width = rect.width();
    if width.is_zero() {
        return Ok(OffAxisResult::default());
    }
    if opts.tol >= width {
        return Err(ZeroFinderError::ToleranceTooCoarse {
            tol: opts.tol.to_string(),
            width: width.to_string(),
        });
    }
    let top = if rect.y_hi > -rect.y_lo.clone() {
        rect.y_hi.clone()
    } else {
        -rect.y_lo.clone()
    };
    if top <= opts.axis_strip {
        return Ok(OffAxisResult::default());
    }
    let upper = Rect::new(rect.x_lo.clone(), rect.x_hi.clone(), opts.axis_strip.clone(), top);
    let data = ChargeData::<f64>::new(sys, 53);

    let mut frontier = vec![upper];
    let mut found = Vec::new();
    let mut undecided = Vec::new();
    while !frontier.is_empty() {
        let steps: Vec<Step> = frontier.par_iter().map(|r| examine(sys, &data, r, opts)).collect();
        frontier = Vec::new();
        for s in steps {
            match s {
                Step::Drop => {}
                Step::Zero(z) => found.push(z),
                Step::Undecided(r) => undecided.push(r),
                Step::Split(a, b) => {
                    frontier.push(a);
                    frontier.push(b);
                }
            }
        }
    }

    let mut zeros = Vec::new();
    for z in dedup(sys, found, opts) {
        for r in [z.clone(), z.mirrored()] {
            let (cx, cy) = r.center();
            if rect.contains(&cx, &cy) {
                zeros.push(CertifiedZero {
                    rect: r,
                    kind: ZeroKind::OffAxis,
                    unique: true,
                    exact: false,
                });
            }
        }
    }
    let mut und: Vec<Rect> = Vec::new();
    for r in undecided {
        und.push(r.mirrored());
        und.push(r);
    }
    zeros.sort_by(|a, b| a.rect.cmp(&b.rect));
    und.sort();
    debug_assert!(zeros.iter().all(|z| z.rect.width() < Rational::one()));
    Ok(OffAxisResult {
        zeros,
        undecided: und,
    })
}
