//! Krawczyk operator for the square system `(X, Y) = 0`:
//! `K = c - C F(c) + (I - C J(B)) (B - c)` with `C` an approximate inverse of
//! the Jacobian at the centre. `K` strictly inside `B` proves a unique zero
//! in `B`; `K` disjoint from `B` proves there is none.

use crate::exact_arith::rational::from_f64_exact;
use crate::exact_arith::Rational;
use crate::field_core::{field_with_jacobian_box, ChargeData, Dyadic, Endpoint, Interval, Round};
use crate::field_core::ChargeSystem;

use super::{Rect, SearchOptions};

#[derive(Clone, Debug, PartialEq)]
pub enum KrawczykOutcome<E> {
    Unique(Interval<E>, Interval<E>),
    Empty,
    /// Neither test succeeded; the box may be shrunk to `K ∩ B`.
    Unknown(Interval<E>, Interval<E>),
}

fn midpoint<E: Endpoint>(iv: &Interval<E>, prec: u32) -> Option<Interval<E>> {
    let lo = iv.lo.to_rational()?;
    let hi = iv.hi.to_rational()?;
    let mid = (lo + hi) / Rational::from_integer(2.into());
    Some(Interval::point(E::from_rational(&mid, prec, Round::Down)))
}

fn point<E: Endpoint>(v: f64, prec: u32) -> Interval<E> {
    Interval::from_rational(&from_f64_exact(v), prec)
}

pub fn krawczyk_step<E: Endpoint>(
    data: &ChargeData<E>,
    bx: &Interval<E>,
    by: &Interval<E>,
) -> KrawczykOutcome<E> {
    let unknown = || KrawczykOutcome::Unknown(bx.clone(), by.clone());
    let prec = data.prec;
    let (Some(cx), Some(cy)) = (midpoint(bx, prec), midpoint(by, prec)) else {
        return unknown();
    };
    let (Some(((fx, fy), _)), Some((_, j))) = (
        field_with_jacobian_box(data, &cx, &cy),
        field_with_jacobian_box(data, bx, by),
    ) else {
        return unknown();
    };
    let (a, b, c, d) = (j.xx.mid_f64(), j.xy.mid_f64(), j.yx.mid_f64(), j.yy.mid_f64());
    let det = a * d - b * c;
    if !det.is_finite() || det == 0.0 {
        return unknown();
    }
    let inv = [[d / det, -b / det], [-c / det, a / det]];
    if inv.iter().flatten().any(|v| !v.is_finite()) {
        return unknown();
    }
    let m: Vec<Vec<Interval<E>>> = inv
        .iter()
        .map(|row| row.iter().map(|v| point::<E>(*v, prec)).collect())
        .collect();
    let one = Interval::from_rational(&Rational::from_integer(1.into()), prec);
    let zero = Interval::from_rational(&Rational::from_integer(0.into()), prec);
    let dx = bx.sub(&cx);
    let dy = by.sub(&cy);
    let jm = [[&j.xx, &j.xy], [&j.yx, &j.yy]];
    let f = [&fx, &fy];
    let centre = [&cx, &cy];
    let mut k = Vec::with_capacity(2);
    for r in 0..2 {
        let cf = m[r][0].mul(f[0]).add(&m[r][1].mul(f[1]));
        let mut row = [zero.clone(), zero.clone()];
        for (col, slot) in row.iter_mut().enumerate() {
            let cj = m[r][0].mul(jm[0][col]).add(&m[r][1].mul(jm[1][col]));
            *slot = if r == col { one.sub(&cj) } else { cj.neg() };
        }
        k.push(centre[r].sub(&cf).add(&row[0].mul(&dx)).add(&row[1].mul(&dy)));
    }
    let (kx, ky) = (k[0].clone(), k[1].clone());
    if bx.interior_contains(&kx) && by.interior_contains(&ky) {
        return KrawczykOutcome::Unique(kx, ky);
    }
    match (kx.intersect(bx), ky.intersect(by)) {
        (Some(ix), Some(iy)) => KrawczykOutcome::Unknown(ix, iy),
        _ => KrawczykOutcome::Empty,
    }
}

/// Result of running Krawczyk to convergence from a starting box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Unique zero in the start box, enclosed by the returned rectangle.
    Unique(Rect),
    Empty,
    Unknown,
}

fn to_rect(bx: &Interval<Dyadic>, by: &Interval<Dyadic>) -> Rect {
    Rect::new(
        bx.lo.to_rational(),
        bx.hi.to_rational(),
        by.lo.to_rational(),
        by.hi.to_rational(),
    )
}

/// Iterates the operator in multiprecision until the enclosure is narrower
/// than `min(tol, 2^-(precision/2 + 24))`.
pub fn certify_box(sys: &ChargeSystem, rect: &Rect, opts: &SearchOptions) -> Certification {
    let prec = opts.precision + 64;
    let data = ChargeData::<Dyadic>::new(sys, prec);
    let mut bx = Interval::from_rationals(&rect.x_lo, &rect.x_hi, prec);
    let mut by = Interval::from_rationals(&rect.y_lo, &rect.y_hi, prec);
    let target = opts.target_width();
    let mut certified = false;
    let mut stalls = 0;
    for _ in 0..400 {
        let before = to_rect(&bx, &by).width();
        match krawczyk_step(&data, &bx, &by) {
            KrawczykOutcome::Empty => return Certification::Empty,
            KrawczykOutcome::Unique(kx, ky) => {
                certified = true;
                bx = kx;
                by = ky;
            }
            KrawczykOutcome::Unknown(ix, iy) => {
                bx = ix;
                by = iy;
            }
        }
        let r = to_rect(&bx, &by);
        let w = r.width();
        if certified && w < target {
            return Certification::Unique(r);
        }
        if w * Rational::new(10.into(), 9.into()) > before {
            stalls += 1;
            if stalls > 3 {
                break;
            }
        } else {
            stalls = 0;
        }
    }
    if certified {
        Certification::Unique(to_rect(&bx, &by))
    } else {
        Certification::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::field_core::{Charge, F64Interval};

    fn triple() -> ChargeSystem {
        // (1, -1, 1) at (-1, 0, 1), shifted by 2
        ChargeSystem::new(vec![
            Charge::new(rat(1, 1), rat(1, 1)),
            Charge::new(rat(2, 1), rat(-1, 1)),
            Charge::new(rat(3, 1), rat(1, 1)),
        ])
        .unwrap()
    }

    #[test]
    fn certifies_known_offaxis_zero() {
        let sys = triple();
        // y^2 = 1 / (2^{2/3} - 1)
        let y0 = (1.0 / (2f64.powf(2.0 / 3.0) - 1.0)).sqrt();
        let data = ChargeData::<f64>::new(&sys, 53);
        let bx = F64Interval::new(1.99, 2.01);
        let by = F64Interval::new(y0 - 0.01, y0 + 0.01);
        assert!(matches!(krawczyk_step(&data, &bx, &by), KrawczykOutcome::Unique(..)));
        let rect = Rect::new(rat(199, 100), rat(201, 100), from_f64_exact(y0 - 0.01), from_f64_exact(y0 + 0.01));
        let Certification::Unique(r) = certify_box(&sys, &rect, &SearchOptions::default()) else {
            panic!("not certified");
        };
        let (cx, cy) = r.center_f64();
        assert!((cx - 2.0).abs() < 1e-15 && (cy - y0).abs() < 1e-14);
        assert!(r.width() < rat(1, 1 << 40));
    }

    #[test]
    fn excludes_empty_box() {
        let sys = triple();
        let rect = Rect::new(rat(5, 1), rat(51, 10), rat(3, 1), rat(31, 10));
        assert_eq!(certify_box(&sys, &rect, &SearchOptions::default()), Certification::Empty);
    }
}
