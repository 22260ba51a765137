//! Square-root elimination: multiplying a radical sum over every sign
//! pattern of its terms yields a polynomial whose zero set contains the zero
//! set of the original sum.

pub mod radical;

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::exact_arith::{BiPoly, Rational};
use crate::field_core::{ChargeSystem, Component, DyadicInterval};
use crate::zero_finder::CertifiedZero;

pub use radical::{RadicalElement, RadicalRing};

/// Largest system expanded unless the caller raises the limit.
pub const DEFAULT_MAX_CHARGES: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignProductError {
    #[error("{m} charges exceed the expansion limit of {limit}")]
    TooManyCharges { m: usize, limit: usize },
    /// The product kept radical monomials; an expansion bug.
    #[error("invariant violation: radical monomials {0:?} survived the sign product")]
    RadicalsSurvived(Vec<u32>),
}

/// One choice of sign per charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    pub signs: Vec<i8>,
}

impl SignPattern {
    /// Patterns with a `+` for the first charge, in binary order.
    pub fn half(m: usize) -> Vec<SignPattern> {
        (0..1u32 << (m.saturating_sub(1)))
            .map(|bits| SignPattern {
                signs: (0..m)
                    .map(|j| if j > 0 && bits >> (j - 1) & 1 == 1 { -1 } else { 1 })
                    .collect(),
            })
            .collect()
    }

    pub fn negated(&self) -> SignPattern {
        SignPattern {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    fn apply(&self, j: usize, c: &Rational) -> Rational {
        if self.signs[j] > 0 {
            c.clone()
        } else {
            -c
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductMode {
    /// Product of `X_s^2 + Y_s^2` over all sign patterns `s`.
    Joint,
    SingleX,
    SingleY,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomializationResult {
    pub poly: BiPoly,
    pub degree: u32,
    pub m: usize,
    pub mode: ProductMode,
}

impl PolynomializationResult {
    fn new(poly: BiPoly, m: usize, mode: ProductMode) -> Self {
        Self {
            degree: poly.total_degree().unwrap_or(0),
            poly,
            m,
            mode,
        }
    }

    /// `3M * 2^M`.
    pub fn degree_bound(&self) -> u64 {
        3 * self.m as u64 * (1u64 << self.m)
    }

    pub fn within_bound(&self) -> bool {
        u64::from(self.degree) <= self.degree_bound()
    }

    /// One term per line, `num/den i j` for `c x^i y^j`, sorted by `(i, j)`.
    pub fn to_text(&self) -> String {
        poly_to_text(&self.poly)
    }
}

pub fn poly_to_text(p: &BiPoly) -> String {
    let mut out = String::new();
    for (&(i, j), c) in p.terms() {
        let _ = writeln!(out, "{}/{} {i} {j}", c.numer(), c.denom());
    }
    out
}

fn check_size(sys: &ChargeSystem, limit: usize) -> Result<(), SignProductError> {
    if sys.len() > limit {
        Err(SignProductError::TooManyCharges {
            m: sys.len(),
            limit,
        })
    } else {
        Ok(())
    }
}

/// `(x - c)^2 + y^2`.
pub fn squared_distance(c: &Rational) -> BiPoly {
    let dx = &BiPoly::x() - &BiPoly::constant(c.clone());
    &(&dx * &dx) + &(&BiPoly::y() * &BiPoly::y())
}

fn product_except(polys: &[BiPoly], skip: &[usize], power: u32) -> BiPoly {
    polys
        .iter()
        .enumerate()
        .filter(|(k, _)| !skip.contains(k))
        .fold(BiPoly::one(), |acc, (_, b)| &acc * &b.pow(power))
}

/// Ring where `chi_j = prod_{k != j} B_k^{3/2}`.
fn distance_ring(sys: &ChargeSystem) -> (RadicalRing, Vec<BiPoly>) {
    let b: Vec<BiPoly> = sys.positions().map(squared_distance).collect();
    let squares = (0..b.len()).map(|j| product_except(&b, &[j], 3)).collect();
    (RadicalRing::new(squares), b)
}

/// `sum_j s_j c_j chi_j` for polynomial coefficients `c_j`.
fn signed_sum(coeffs: &[BiPoly], s: &SignPattern) -> RadicalElement {
    coeffs
        .iter()
        .enumerate()
        .fold(RadicalElement::default(), |acc, (j, c)| {
            let c = if s.signs[j] > 0 { c.clone() } else { -c };
            acc.sum(&RadicalElement::radical(j, c))
        })
}

/// Multiplies `factor(s) * factor(-s)` for each half pattern, then all pairs.
fn paired_product(
    ring: &RadicalRing,
    m: usize,
    factor: impl Fn(&SignPattern) -> RadicalElement,
) -> Result<BiPoly, SignProductError> {
    let pairs: Vec<RadicalElement> = SignPattern::half(m)
        .iter()
        .map(|s| ring.mul(&factor(s), &factor(&s.negated())))
        .collect();
    ring.product(pairs)
        .into_pure()
        .map_err(SignProductError::RadicalsSurvived)
}

fn x_coeffs(sys: &ChargeSystem) -> Vec<BiPoly> {
    sys.charges()
        .iter()
        .map(|c| {
            (&BiPoly::x() - &BiPoly::constant(c.position.clone())).scale(&c.amplitude)
        })
        .collect()
}

fn y_coeffs(sys: &ChargeSystem) -> Vec<BiPoly> {
    sys.amplitudes().map(|a| BiPoly::y().scale(a)).collect()
}

pub fn build_joint_polynomial(sys: &ChargeSystem) -> Result<PolynomializationResult, SignProductError> {
    build_joint_polynomial_with_limit(sys, DEFAULT_MAX_CHARGES)
}

/// `P` with `prod_s (X_s^2 + Y_s^2) = P / D^{2^{M+1}}`, `D = prod_k B_k^{3/2}`.
pub fn build_joint_polynomial_with_limit(
    sys: &ChargeSystem,
    limit: usize,
) -> Result<PolynomializationResult, SignProductError> {
    check_size(sys, limit)?;
    let (ring, _) = distance_ring(sys);
    let (xc, yc) = (x_coeffs(sys), y_coeffs(sys));
    let factor = |s: &SignPattern| {
        let sx = signed_sum(&xc, s);
        let sy = signed_sum(&yc, s);
        ring.mul(&sx, &sx).sum(&ring.mul(&sy, &sy))
    };
    let poly = paired_product(&ring, sys.len(), factor)?;
    Ok(PolynomializationResult::new(poly, sys.len(), ProductMode::Joint))
}

/// The joint polynomial with the factor `prod_k B_k` removed from every one
/// of its `2^M` factors; `P = P_red * (prod_k B_k)^{2^M}`.
///
/// Built independently in the ring `psi_j^2 = B_j`, where each factor is
/// `sum_j a_j^2 prod_{k != j} B_k^2
///  + 2 sum_{j<k} s_j s_k a_j a_k ((x-x_j)(x-x_k) + y^2) psi_j psi_k prod_{l != j,k} B_l^2`.
pub fn build_reduced_joint_polynomial(sys: &ChargeSystem) -> Result<BiPoly, SignProductError> {
    check_size(sys, DEFAULT_MAX_CHARGES)?;
    let b: Vec<BiPoly> = sys.positions().map(squared_distance).collect();
    let ring = RadicalRing::new(b.clone());
    let m = sys.len();
    let ch = sys.charges();
    let diag = (0..m).fold(BiPoly::zero(), |acc, j| {
        let a2 = &ch[j].amplitude * &ch[j].amplitude;
        &acc + &product_except(&b, &[j], 2).scale(&a2)
    });
    let y2 = &BiPoly::y() * &BiPoly::y();
    let factor = |s: &SignPattern| {
        let mut f = RadicalElement::scalar(diag.clone());
        for j in 0..m {
            for k in j + 1..m {
                let dj = &BiPoly::x() - &BiPoly::constant(ch[j].position.clone());
                let dk = &BiPoly::x() - &BiPoly::constant(ch[k].position.clone());
                let c = s.apply(j, &s.apply(k, &(&ch[j].amplitude * &ch[k].amplitude)));
                let coeff = &(&(&dj * &dk) + &y2) * &product_except(&b, &[j, k], 2);
                f.add((1 << j) | (1 << k), coeff.scale(&(c * Rational::from_integer(2.into()))));
            }
        }
        f
    };
    paired_product(&ring, m, factor)
}

pub fn build_component_polynomial(
    sys: &ChargeSystem,
    component: Component,
) -> Result<PolynomializationResult, SignProductError> {
    build_component_polynomial_with_limit(sys, component, DEFAULT_MAX_CHARGES)
}

/// `prod_s sum_j s_j A_j D_j^{1/2}` with `A_j = a_j (x - x_j)` or `a_j y`.
pub fn build_component_polynomial_with_limit(
    sys: &ChargeSystem,
    component: Component,
    limit: usize,
) -> Result<PolynomializationResult, SignProductError> {
    check_size(sys, limit)?;
    let (ring, _) = distance_ring(sys);
    let (coeffs, mode) = match component {
        Component::X => (x_coeffs(sys), ProductMode::SingleX),
        Component::Y => (y_coeffs(sys), ProductMode::SingleY),
    };
    let poly = paired_product(&ring, sys.len(), |s| signed_sum(&coeffs, s))?;
    Ok(PolynomializationResult::new(poly, sys.len(), mode))
}

/// Half sign products of the moment kernels `U = sum a_j / r_j^3` and
/// `V = sum a_j x_j / r_j^3`, as polynomials in `x` and `w = y^2`.
///
/// Off the axis, `Y = y U` and `X = x U - V`, so every off-axis zero of the
/// field lies on both curves. Only patterns with a `+` on the first charge
/// are used; the full product is the square of this one up to sign, so the
/// zero sets agree at half the degree.
pub fn moment_half_products(sys: &ChargeSystem) -> Result<(BiPoly, BiPoly), SignProductError> {
    check_size(sys, DEFAULT_MAX_CHARGES)?;
    let u: Vec<BiPoly> = sys.amplitudes().map(|a| BiPoly::constant(a.clone())).collect();
    let v: Vec<BiPoly> = sys
        .charges()
        .iter()
        .map(|c| BiPoly::constant(&c.amplitude * &c.position))
        .collect();
    if sys.len() == 1 {
        // the only radical is an empty product
        return Ok((u[0].clone(), v[0].clone()));
    }
    let (ring, _) = distance_ring(sys);
    let half = |coeffs: &[BiPoly]| -> Result<BiPoly, SignProductError> {
        let factors = SignPattern::half(sys.len())
            .iter()
            .map(|s| signed_sum(coeffs, s))
            .collect();
        let p = ring
            .product(factors)
            .into_pure()
            .map_err(SignProductError::RadicalsSurvived)?;
        Ok(p.halve_y())
    };
    Ok((half(&u)?, half(&v)?))
}

/// Interval enclosure of `p` over a box.
pub fn eval_box(p: &BiPoly, x: &DyadicInterval, y: &DyadicInterval, prec: u32) -> DyadicInterval {
    let zero = DyadicInterval::from_rational(&Rational::from_integer(0.into()), prec);
    let mut acc_y = zero.clone();
    for cy in p.coeffs_in_y().iter().rev() {
        let mut acc_x = zero.clone();
        for c in cy.coeffs().iter().rev() {
            acc_x = acc_x.mul(x).add(&DyadicInterval::from_rational(c, prec));
        }
        acc_y = acc_y.mul(y).add(&acc_x);
    }
    acc_y
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub checked: usize,
    pub passed: bool,
    /// Indices of zeros whose box provably misses `{P = 0}`.
    pub failures: Vec<usize>,
}

/// Every certified zero box must meet `{P = 0}`.
pub fn containment_check(
    result: &PolynomializationResult,
    zeros: &[CertifiedZero],
    prec: u32,
) -> ContainmentReport {
    let failures: Vec<usize> = zeros
        .iter()
        .enumerate()
        .filter(|(_, z)| {
            let xi = DyadicInterval::from_rationals(&z.rect.x_lo, &z.rect.x_hi, prec);
            let yi = DyadicInterval::from_rationals(&z.rect.y_lo, &z.rect.y_hi, prec);
            !eval_box(&result.poly, &xi, &yi, prec).contains_zero()
        })
        .map(|(i, _)| i)
        .collect();
    ContainmentReport {
        checked: zeros.len(),
        passed: failures.is_empty(),
        failures,
    }
}
