use serde::Serialize;

use crate::exact_arith::rational::to_f64;
use crate::field_core::{
    eval_moment_kernels, gradient_cosine, implicit_tangent_slopes, kernel_f64, ChargeSystem, EvalPoint, TangentSlopes,
};

use super::{CertifiedZero, ZeroKind};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroDiagnostic {
    pub index: usize,
    pub kind: ZeroKind,
    pub center: (f64, f64),
    /// `sum a_j / r_j^3` at the centre; vanishes at off-axis zeros.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moment_kernel: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slopes: Option<TangentSlopes>,
    /// Absent when a curve is vertical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_product: Option<f64>,
    /// `|cos|` of the angle between the gradients of `X` and `Y`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gradient_cosine: Option<f64>,
    /// Same quantity from central differences of the field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_gradient_cosine: Option<f64>,
    pub verdict: String,
}

/// Gradients of `X` and `Y` from central differences, `h` relative to the point.
fn fd_gradients(sys: &ChargeSystem, x: f64, y: f64) -> ((f64, f64), (f64, f64)) {
    let h = 1e-6 * (1.0 + x.abs().max(y.abs()));
    let f = |dx: f64, dy: f64| kernel_f64(sys, x + dx, y + dy, 1);
    let (xp, yp) = f(h, 0.0);
    let (xm, ym) = f(-h, 0.0);
    let (xu, yu) = f(0.0, h);
    let (xd, yd) = f(0.0, -h);
    let d = 2.0 * h;
    (((xp - xm) / d, (xu - xd) / d), ((yp - ym) / d, (yu - yd) / d))
}

/// Tangent slopes of `{X = 0}` and `{Y = 0}` through each zero. Off the
/// axis the two curves should cross at a right angle.
pub fn orthogonality_diagnostics(
    sys: &ChargeSystem,
    zeros: &[CertifiedZero],
    precision: u32,
) -> Vec<ZeroDiagnostic> {
    zeros
        .iter()
        .enumerate()
        .map(|(index, z)| {
            let (cx, cy) = z.rect.center();
            let center = (to_f64(&cx), to_f64(&cy));
            let mut d = ZeroDiagnostic {
                index,
                kind: z.kind,
                center,
                moment_kernel: None,
                slopes: None,
                slope_product: None,
                gradient_cosine: None,
                fd_gradient_cosine: None,
                verdict: String::new(),
            };
            let pt = match EvalPoint::new(cx, cy, precision) {
                Ok(p) => p,
                Err(e) => {
                    d.verdict = format!("not evaluated: {e}");
                    return d;
                }
            };
            if z.kind == ZeroKind::OffAxis {
                d.moment_kernel = eval_moment_kernels(sys, &pt).ok().map(|(u, _)| u.mid_f64());
                let (gx, gy) = fd_gradients(sys, center.0, center.1);
                d.fd_gradient_cosine = gradient_cosine(gx, gy);
            }
            match implicit_tangent_slopes(sys, &pt) {
                Ok(t) => {
                    d.slope_product = t.product();
                    d.gradient_cosine = t.gradient_cosine();
                    d.verdict = match (z.kind, t.gradient_cosine()) {
                        (ZeroKind::Axis, _) if t.is_axis_vertical_pair() => "orthogonal (axis/vertical)".into(),
                        (_, Some(c)) if c <= 1e-6 => "orthogonal".into(),
                        (ZeroKind::OffAxis, _) => "not orthogonal".into(),
                        (ZeroKind::Axis, _) => "axis zero".into(),
                    };
                    d.slopes = Some(t);
                }
                Err(e) => d.verdict = format!("slopes unavailable: {e}"),
            }
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::field_core::Charge;
    use crate::zero_finder::{axis_zeros, offaxis_zeros, Rect, SearchOptions};

    #[test]
    fn triple_zeros_are_orthogonal() {
        let sys = ChargeSystem::new(vec![
            Charge::new(rat(1, 1), rat(1, 1)),
            Charge::new(rat(2, 1), rat(-1, 1)),
            Charge::new(rat(3, 1), rat(1, 1)),
        ])
        .unwrap();
        let opts = SearchOptions::default();
        let zs = offaxis_zeros(&sys, &Rect::square(&rat(6, 1)), &opts).unwrap().zeros;
        let diag = orthogonality_diagnostics(&sys, &zs, opts.precision);
        assert_eq!(diag.len(), 2);
        for d in &diag {
            assert_eq!(d.verdict, "orthogonal", "{d:?}");
            assert!(d.gradient_cosine.unwrap() < 1e-12);
            assert!(d.fd_gradient_cosine.unwrap() < 1e-6);
            assert!(d.moment_kernel.unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_axis_zero_is_axis_vertical() {
        let sys = ChargeSystem::new(vec![
            Charge::new(rat(1, 1), rat(1, 1)),
            Charge::new(rat(3, 1), rat(1, 1)),
        ])
        .unwrap();
        let zs = axis_zeros(&sys, &rat(1, 1 << 40));
        let diag = orthogonality_diagnostics(&sys, &zs, 128);
        assert_eq!(diag[0].verdict, "orthogonal (axis/vertical)");
        assert!(orthogonality_diagnostics(&sys, &[], 128).is_empty());
    }
}
