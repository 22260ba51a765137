//! Sylvester resultants, univariate and bivariate.
//!
//! Bivariate resultants are computed by evaluating the Sylvester determinant
//! at integer nodes and interpolating, so no polynomial-entry determinant is
//! ever formed.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bipoly::BiPoly;
use super::rational::{common_denominator, int, Rational};
use super::unipoly::UniPoly;

/// Fraction-free Gaussian elimination. Consumes the matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Determinant of the Sylvester matrix for coefficient vectors of formal
/// lengths `f.len()` and `g.len()` (leading entries may be zero).
pub fn sylvester_det(f: &[Rational], g: &[Rational]) -> Rational {
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    if m + n == 0 {
        return Rational::one();
    }
    let df = common_denominator(f.iter());
    let dg = common_denominator(g.iter());
    let fi: Vec<BigInt> = f.iter().map(|c| (c * Rational::from_integer(df.clone())).to_integer()).collect();
    let gi: Vec<BigInt> = g.iter().map(|c| (c * Rational::from_integer(dg.clone())).to_integer()).collect();
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients from the leading one down
    for r in 0..n {
        for (k, c) in fi.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in gi.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    let det = bareiss_det(mat);
    let scale = num_traits::pow(df, n) * num_traits::pow(dg, m);
    Rational::new(det, scale)
}

/// Resultant of two nonzero univariate polynomials at their actual degrees.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Rational {
    sylvester_det(f.coeffs(), g.coeffs())
}

/// Polynomial through `(x_i, v_i)` at distinct rational nodes (Newton form).
pub fn interpolate(xs: &[Rational], vs: &[Rational]) -> UniPoly {
    assert_eq!(xs.len(), vs.len());
    let n = xs.len();
    let mut dd: Vec<Rational> = vs.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::from_coeffs(vec![-xs[i].clone(), Rational::one()]);
        p = &(&p * &lin) + &UniPoly::constant(dd[i].clone());
    }
    p
}

/// `res_y(f, g)` as a polynomial in `x`, using the formal `y`-degrees of
/// `f` and `g`. Zero if either input is zero.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let (Some(m), Some(n)) = (f.degree_y(), g.degree_y()) else {
        return UniPoly::zero();
    };
    let fx = f.coeffs_in_y();
    let gx = g.coeffs_in_y();
    let by_rows = n as usize * f.degree_x().unwrap_or(0) as usize
        + m as usize * g.degree_x().unwrap_or(0) as usize;
    let by_total = f.total_degree().unwrap_or(0) as usize * g.total_degree().unwrap_or(0) as usize;
    let bound = by_rows.min(by_total);
    let nodes: Vec<Rational> = (0..=bound as i64).map(int).collect();
    let values: Vec<Rational> = nodes
        .par_iter()
        .map(|x0| {
            let fv: Vec<Rational> = fx.iter().map(|c| c.eval(x0)).collect();
            let gv: Vec<Rational> = gx.iter().map(|c| c.eval(x0)).collect();
            sylvester_det(&fv, &gv)
        })
        .collect();
    interpolate(&nodes, &values)
}

/// `res_x(f, g)` as a polynomial in `y`.
pub fn resultant_x(f: &BiPoly, g: &BiPoly) -> UniPoly {
    resultant_y(&f.swap_xy(), &g.swap_xy())
}
