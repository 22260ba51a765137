//! Tangent slopes of the two component zero sets through a zero of the field.

use serde::Serialize;

use super::dyadic::Dyadic;
use super::eval::{eval_field, eval_kernel, eval_kernel_partials, EvalPoint};
use super::interval::DyadicInterval;
use super::system::ChargeSystem;
use super::{Component, FieldError};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Slope {
    Finite(f64),
    Vertical,
}

impl Slope {
    /// `-gx / gy` for a gradient `(gx, gy)`; vertical when `gy` is negligible.
    fn from_gradient(gx: f64, gy: f64, tol: f64) -> Self {
        if gy.abs() <= tol {
            Slope::Vertical
        } else {
            Slope::Finite(-gx / gy)
        }
    }
}

/// Which next-order kernel is nonzero at the point: `X_2 != 0` makes both
/// `dX/dy` and `dY/dx` nonzero, `Y_2 != 0` makes `dX/dx` and `dY/dy` nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NextKernelCondition {
    pub next_x_nonzero: bool,
    pub next_y_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentSlopes {
    /// Slope `dy/dx` of `{X = 0}` through the point.
    pub x_curve: Slope,
    /// Slope `dy/dx` of `{Y = 0}` through the point.
    pub y_curve: Slope,
    pub condition: NextKernelCondition,
    /// Gradients `(dX/dx, dX/dy)` and `(dY/dx, dY/dy)` as floats.
    pub grad_x: (f64, f64),
    pub grad_y: (f64, f64),
}

impl TangentSlopes {
    /// Product of the two slopes when both are finite.
    pub fn product(&self) -> Option<f64> {
        match (self.x_curve, self.y_curve) {
            (Slope::Finite(a), Slope::Finite(b)) => Some(a * b),
            _ => None,
        }
    }

    /// `|cos|` of the angle between the two gradients; zero means the
    /// curves cross at a right angle.
    pub fn gradient_cosine(&self) -> Option<f64> {
        gradient_cosine(self.grad_x, self.grad_y)
    }

    /// One curve vertical and the other horizontal.
    pub fn is_axis_vertical_pair(&self) -> bool {
        matches!(
            (self.x_curve, self.y_curve),
            (Slope::Vertical, Slope::Finite(s)) | (Slope::Finite(s), Slope::Vertical) if s == 0.0
        )
    }
}

pub fn gradient_cosine(a: (f64, f64), b: (f64, f64)) -> Option<f64> {
    let n = a.0.hypot(a.1) * b.0.hypot(b.1);
    (n > 0.0 && n.is_finite()).then(|| (a.0 * b.0 + a.1 * b.1).abs() / n)
}

fn nonzero(iv: &DyadicInterval) -> bool {
    !iv.contains_zero()
}

/// Default zero tolerance `2^(-precision/2)`.
pub fn zero_tolerance(precision: u32) -> f64 {
    Dyadic::pow2(-(precision as i64 / 2), 64).to_f64()
}

/// Implicit-function slopes of `{X = 0}` and `{Y = 0}` at a point where both
/// components vanish to within `2^(-precision/2)`.
pub fn implicit_tangent_slopes(
    sys: &ChargeSystem,
    pt: &EvalPoint,
) -> Result<TangentSlopes, FieldError> {
    let tol = zero_tolerance(pt.precision);
    let f = eval_field(sys, pt)?;
    if f.x.mag().to_f64() > tol || f.y.mag().to_f64() > tol {
        return Err(FieldError::NotAZero {
            x: f.x_f64(),
            y: f.y_f64(),
        });
    }
    let j = eval_kernel_partials(sys, pt, 1)?;
    let gx = (j.xx.mid_f64(), j.xy.mid_f64());
    let gy = (j.yx.mid_f64(), j.yy.mid_f64());
    // the scale of a gradient entry is judged against the larger entry
    for (g, component) in [(gx, Component::X), (gy, Component::Y)] {
        if g.0.abs() <= tol && g.1.abs() <= tol {
            return Err(FieldError::DegenerateJacobian { component });
        }
    }
    let next = eval_kernel(sys, pt, 2)?;
    Ok(TangentSlopes {
        x_curve: Slope::from_gradient(gx.0, gx.1, tol),
        y_curve: Slope::from_gradient(gy.0, gy.1, tol),
        condition: NextKernelCondition {
            next_x_nonzero: nonzero(&next.x),
            next_y_nonzero: nonzero(&next.y),
        },
        grad_x: gx,
        grad_y: gy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn symmetric_pair_axis_and_vertical() {
        let v = [(rat(1, 1), rat(1, 1)), (rat(3, 1), rat(1, 1))];
        let (s, _) = ChargeSystem::from_pairs(&v).unwrap();
        let p = EvalPoint::new(rat(2, 1), rat(0, 1), 128).unwrap();
        let t = implicit_tangent_slopes(&s, &p).unwrap();
        assert_eq!(t.x_curve, Slope::Vertical);
        assert_eq!(t.y_curve, Slope::Finite(0.0));
        assert!(t.is_axis_vertical_pair());
        assert!(t.product().is_none());
    }

    #[test]
    fn non_zero_point_rejected() {
        let v = [(rat(1, 1), rat(1, 1)), (rat(3, 1), rat(1, 1))];
        let (s, _) = ChargeSystem::from_pairs(&v).unwrap();
        let p = EvalPoint::new(rat(5, 2), rat(1, 3), 128).unwrap();
        assert!(matches!(
            implicit_tangent_slopes(&s, &p),
            Err(FieldError::NotAZero { .. })
        ));
    }
}
