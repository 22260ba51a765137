//! Evaluation of the field, the generalized kernels and their partials.
//!
//! With `r_j^2 = (x - x_j)^2 + y^2` the kernels are
//! `X_m = sum a_j (x - x_j) / r_j^(2m+1)` and `Y_m = sum a_j y / r_j^(2m+1)`;
//! `m = 1` is the physical field. Everything here is generic over the
//! interval endpoint so the same code drives fast `f64` box tests and
//! high-precision point enclosures.

use num_traits::Zero;
use serde::Serialize;

use crate::exact_arith::{rational::from_f64_exact, Rational};

use super::dyadic::Dyadic;
use super::interval::{DyadicInterval, Endpoint, Interval};
use super::system::ChargeSystem;
use super::FieldError;

/// Charge data converted to intervals once per precision.
#[derive(Clone, Debug)]
pub struct ChargeData<E> {
    pub positions: Vec<Interval<E>>,
    pub amplitudes: Vec<Interval<E>>,
    /// `a_j x_j`, for the moment kernel `V`.
    pub weighted: Vec<Interval<E>>,
    pub prec: u32,
}

impl<E: Endpoint> ChargeData<E> {
    pub fn new(sys: &ChargeSystem, prec: u32) -> Self {
        let positions = sys
            .positions()
            .map(|x| Interval::from_rational(x, prec))
            .collect();
        let amplitudes = sys
            .amplitudes()
            .map(|a| Interval::from_rational(a, prec))
            .collect();
        let weighted = sys
            .charges()
            .iter()
            .map(|c| Interval::from_rational(&(&c.position * &c.amplitude), prec))
            .collect();
        Self {
            positions,
            amplitudes,
            weighted,
            prec,
        }
    }

    fn small_int(&self, k: i64) -> Interval<E> {
        Interval::from_rational(&Rational::from_integer(k.into()), self.prec)
    }
}

/// Per-charge pieces shared by all kernels at one box.
struct Term<E> {
    dx: Interval<E>,
    dx2: Interval<E>,
    y2: Interval<E>,
    /// `1 / r_j^(2m+1)`
    inv: Interval<E>,
    /// `1 / r_j^2`
    inv_b: Interval<E>,
}

fn terms<E: Endpoint>(
    data: &ChargeData<E>,
    x: &Interval<E>,
    y: &Interval<E>,
    m: u32,
) -> Option<Vec<Term<E>>> {
    let y2 = y.sqr();
    data.positions
        .iter()
        .map(|xj| {
            let dx = x.sub(xj);
            let dx2 = dx.sqr();
            let b = dx2.add(&y2);
            let inv_b = b.recip()?;
            let r = b.sqrt();
            let inv = b.powi(m).mul(&r).recip()?;
            Some(Term {
                dx,
                dx2,
                y2: y2.clone(),
                inv,
                inv_b,
            })
        })
        .collect()
}

fn zero<E: Endpoint>(data: &ChargeData<E>) -> Interval<E> {
    data.small_int(0)
}

/// Enclosure of `(X_m, Y_m)` over a box; `None` if the box meets a charge.
pub fn kernel_box<E: Endpoint>(
    data: &ChargeData<E>,
    x: &Interval<E>,
    y: &Interval<E>,
    m: u32,
) -> Option<(Interval<E>, Interval<E>)> {
    let ts = terms(data, x, y, m)?;
    let mut sx = zero(data);
    let mut sy = zero(data);
    for (t, a) in ts.iter().zip(&data.amplitudes) {
        let w = a.mul(&t.inv);
        sx = sx.add(&w.mul(&t.dx));
        sy = sy.add(&w);
    }
    Some((sx, sy.mul(y)))
}

/// Enclosure of `U = sum a_j / r_j^3` and `V = sum a_j x_j / r_j^3`.
///
/// Off the axis `Y = y U`, and `X = x U - V`, so a zero of the field with
/// `y != 0` is a common zero of `U` and `V`.
pub fn moment_kernels_box<E: Endpoint>(
    data: &ChargeData<E>,
    x: &Interval<E>,
    y: &Interval<E>,
) -> Option<(Interval<E>, Interval<E>)> {
    let ts = terms(data, x, y, 1)?;
    let mut u = zero(data);
    let mut v = zero(data);
    for ((t, a), ax) in ts.iter().zip(&data.amplitudes).zip(&data.weighted) {
        u = u.add(&a.mul(&t.inv));
        v = v.add(&ax.mul(&t.inv));
    }
    Some((u, v))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelPartials<T> {
    /// `dX_m/dx`
    pub xx: T,
    /// `dX_m/dy`
    pub xy: T,
    /// `dY_m/dx`
    pub yx: T,
    /// `dY_m/dy`
    pub yy: T,
}

/// Enclosure of the four first partials of `(X_m, Y_m)` over a box:
/// `dX_m/dx = sum a_j (y^2 - 2m dx^2) / r^(2m+3)`,
/// `dX_m/dy = dY_m/dx = -(2m+1) sum a_j dx y / r^(2m+3)`,
/// `dY_m/dy = sum a_j (dx^2 - 2m y^2) / r^(2m+3)`.
pub fn kernel_partials_box<E: Endpoint>(
    data: &ChargeData<E>,
    x: &Interval<E>,
    y: &Interval<E>,
    m: u32,
) -> Option<KernelPartials<Interval<E>>> {
    let ts = terms(data, x, y, m)?;
    let two_m = data.small_int(2 * m as i64);
    let mut xx = zero(data);
    let mut xy = zero(data);
    let mut yy = zero(data);
    for (t, a) in ts.iter().zip(&data.amplitudes) {
        let w = a.mul(&t.inv).mul(&t.inv_b);
        xx = xx.add(&w.mul(&t.y2.sub(&two_m.mul(&t.dx2))));
        yy = yy.add(&w.mul(&t.dx2.sub(&two_m.mul(&t.y2))));
        xy = xy.add(&w.mul(&t.dx));
    }
    let xy = xy.mul(y).mul(&data.small_int(-(2 * m as i64 + 1)));
    Some(KernelPartials {
        xx,
        yx: xy.clone(),
        xy,
        yy,
    })
}

/// Field value and Jacobian over a box, for Newton-type tests.
pub fn field_with_jacobian_box<E: Endpoint>(
    data: &ChargeData<E>,
    x: &Interval<E>,
    y: &Interval<E>,
) -> Option<((Interval<E>, Interval<E>), KernelPartials<Interval<E>>)> {
    Some((kernel_box(data, x, y, 1)?, kernel_partials_box(data, x, y, 1)?))
}

/// A point given exactly, with the precision requested for results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    pub x: Rational,
    pub y: Rational,
    pub precision: u32,
}

pub const MIN_PRECISION: u32 = 64;
pub const DEFAULT_PRECISION: u32 = 128;

impl EvalPoint {
    pub fn new(x: Rational, y: Rational, precision: u32) -> Result<Self, FieldError> {
        if precision < MIN_PRECISION {
            return Err(FieldError::PrecisionTooLow(precision));
        }
        Ok(Self { x, y, precision })
    }

    pub fn from_f64(x: f64, y: f64, precision: u32) -> Result<Self, FieldError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(FieldError::NonFinitePoint);
        }
        Self::new(from_f64_exact(x), from_f64_exact(y), precision)
    }

    fn check(&self, sys: &ChargeSystem) -> Result<(), FieldError> {
        if self.y.is_zero() {
            if let Some(index) = sys.charge_at(&self.x) {
                return Err(FieldError::SingularPoint { index });
            }
        }
        Ok(())
    }
}

/// Rigorous enclosures of the two components at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldValue {
    pub x: DyadicInterval,
    pub y: DyadicInterval,
    pub precision: u32,
}

impl FieldValue {
    pub fn x_f64(&self) -> f64 {
        self.x.mid_f64()
    }

    pub fn y_f64(&self) -> f64 {
        self.y.mid_f64()
    }

    /// Larger of the two enclosure widths.
    pub fn error_bound(&self) -> f64 {
        self.x.width_f64().max(self.y.width_f64())
    }
}

/// Enclosure is accurate when its width is at most one unit in the last
/// place of its midpoint at `prec` bits (or it is a single point).
fn within_ulp(iv: &DyadicInterval, prec: u32) -> bool {
    let w = iv.hi.sub(&iv.lo, super::dyadic::Round::Up);
    if w.is_zero() {
        return true;
    }
    let mag = Dyadic::max(&iv.lo.abs(), &iv.hi.abs());
    match (w.magnitude_log2(), mag.magnitude_log2()) {
        (Some(lw), Some(lm)) => lw <= lm - prec as i64,
        _ => false,
    }
}

/// Runs `f` at increasing working precision until `accurate` accepts the
/// result or the guard budget runs out; the last enclosure is returned
/// either way (it is always rigorous, only possibly wider than one ulp
/// when the true value is zero or extremely cancelled).
fn adaptive<T>(prec: u32, f: impl Fn(u32) -> T, accurate: impl Fn(&T) -> bool) -> T {
    let mut guard = 32u32;
    loop {
        let v = f(prec + guard);
        if accurate(&v) || guard >= 4 * prec {
            return v;
        }
        guard *= 2;
    }
}

fn point_interval(r: &Rational, prec: u32) -> DyadicInterval {
    Interval::from_rational(r, prec)
}

pub fn eval_kernel(sys: &ChargeSystem, pt: &EvalPoint, m: u32) -> Result<FieldValue, FieldError> {
    if m == 0 {
        return Err(FieldError::KernelIndex);
    }
    pt.check(sys)?;
    let p = pt.precision;
    let v = adaptive(
        p,
        |wp| {
            let data = ChargeData::<Dyadic>::new(sys, wp);
            let (x, y) = (point_interval(&pt.x, wp), point_interval(&pt.y, wp));
            kernel_box(&data, &x, &y, m).expect("point off the charges")
        },
        |(a, b)| within_ulp(a, p) && within_ulp(b, p),
    );
    Ok(FieldValue {
        x: v.0,
        y: v.1,
        precision: p,
    })
}

pub fn eval_field(sys: &ChargeSystem, pt: &EvalPoint) -> Result<FieldValue, FieldError> {
    eval_kernel(sys, pt, 1)
}

pub fn eval_kernel_partials(
    sys: &ChargeSystem,
    pt: &EvalPoint,
    m: u32,
) -> Result<KernelPartials<DyadicInterval>, FieldError> {
    if m == 0 {
        return Err(FieldError::KernelIndex);
    }
    pt.check(sys)?;
    let p = pt.precision;
    Ok(adaptive(
        p,
        |wp| {
            let data = ChargeData::<Dyadic>::new(sys, wp);
            let (x, y) = (point_interval(&pt.x, wp), point_interval(&pt.y, wp));
            kernel_partials_box(&data, &x, &y, m).expect("point off the charges")
        },
        |k| [&k.xx, &k.xy, &k.yy].iter().all(|iv| within_ulp(iv, p)),
    ))
}

/// `U` and `V` at a point (see `moment_kernels_box`).
pub fn eval_moment_kernels(
    sys: &ChargeSystem,
    pt: &EvalPoint,
) -> Result<(DyadicInterval, DyadicInterval), FieldError> {
    pt.check(sys)?;
    let p = pt.precision;
    Ok(adaptive(
        p,
        |wp| {
            let data = ChargeData::<Dyadic>::new(sys, wp);
            let (x, y) = (point_interval(&pt.x, wp), point_interval(&pt.y, wp));
            moment_kernels_box(&data, &x, &y).expect("point off the charges")
        },
        |(u, v)| within_ulp(u, p) && within_ulp(v, p),
    ))
}

/// Plain `f64` evaluation of `(X_m, Y_m)`, for contouring and quick scans.
pub fn kernel_f64(sys: &ChargeSystem, x: f64, y: f64, m: u32) -> (f64, f64) {
    let mut sx = 0.0;
    let mut sy = 0.0;
    for c in sys.charges() {
        let xj = crate::exact_arith::rational::to_f64(&c.position);
        let a = crate::exact_arith::rational::to_f64(&c.amplitude);
        let dx = x - xj;
        let b = dx * dx + y * y;
        let inv = 1.0 / (b.powi(m as i32) * b.sqrt());
        sx += a * dx * inv;
        sy += a * y * inv;
    }
    (sx, sy)
}
