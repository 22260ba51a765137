//! Sparse bivariate polynomials over the rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, int, Rational};
use super::unipoly::UniPoly;

/// Terms keyed by `(i, j)` meaning `x^i y^j`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

/// Exact evaluation at a rational point.
pub fn bi_evaluate(p: &BiPoly, x: &Rational, y: &Rational) -> Rational {
    p.eval(x, y)
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    /// `u(x)` as a bivariate polynomial.
    pub fn from_uni_x(u: &UniPoly) -> Self {
        Self::from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    pub fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in x over the coefficient polynomials of y^j
        let mut acc = Rational::zero();
        let by_y = self.coeffs_in_y();
        for cj in by_y.iter().rev() {
            acc = acc * y + cj.eval(x);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| super::rational::to_f64(c) * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    /// `p = sum_j c_j(x) y^j`, returned as `[c_0, c_1, ...]`.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly> {
        let Some(dy) = self.degree_y() else {
            return Vec::new();
        };
        let mut raw = vec![Vec::<Rational>::new(); dy as usize + 1];
        for (&(i, j), c) in &self.terms {
            let v = &mut raw[j as usize];
            if v.len() <= i as usize {
                v.resize(i as usize + 1, Rational::zero());
            }
            v[i as usize] = c.clone();
        }
        raw.into_iter().map(UniPoly::from_coeffs).collect()
    }

    /// `p = sum_i c_i(y) x^i`, returned as `[c_0, c_1, ...]`.
    pub fn coeffs_in_x(&self) -> Vec<UniPoly> {
        self.swap_xy().coeffs_in_y()
    }

    pub fn swap_xy(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Restriction to the line `y = y0`, as a polynomial in `x`.
    pub fn restrict_y(&self, y0: &Rational) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs_in_y().iter().rev() {
            acc = &acc.scale(y0) + c;
        }
        acc
    }

    /// True when every stored term has an even power of `y`.
    pub fn is_even_in_y(&self) -> bool {
        self.terms.keys().all(|(_, j)| j % 2 == 0)
    }

    /// Substitutes `y^2 -> w`; requires `is_even_in_y`.
    pub fn halve_y(&self) -> Self {
        assert!(self.is_even_in_y());
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((i, j / 2), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * int(i as i64))),
        )
    }

    pub fn partial_y(&self) -> Self {
        self.swap_xy().partial_x().swap_xy()
    }

    /// Exact division by `d` when `d` is monic in `y` of positive `y`-degree
    /// (as polynomial in `y` over `Q[x]`). Returns `None` if `d` does not divide.
    pub fn div_exact_monic_y(&self, d: &BiPoly) -> Option<BiPoly> {
        let dd = d.degree_y()? as usize;
        let dc = d.coeffs_in_y();
        if dd == 0 || !dc[dd].is_constant() || dc[dd].coeff(0) != Rational::one() {
            return None;
        }
        let mut rem = self.coeffs_in_y();
        if rem.len() <= dd {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut quot = vec![UniPoly::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if !c.is_zero() {
                for (i, dci) in dc.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(&c * dci);
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        let mut out = Self::zero();
        for (j, q) in quot.iter().enumerate() {
            for (i, c) in q.coeffs().iter().enumerate() {
                out.add_term((i as u32, j as u32), c.clone());
            }
        }
        Some(out)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            if (i == 0 && j == 0) || !a.is_one() {
                write!(f, "{}", format_rational(&a))?;
            }
            for (v, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => write!(f, "{v}")?,
                    _ => write!(f, "{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl BiPoly {
    /// Integer coefficients and the common denominator they share.
    fn cleared(&self) -> (Vec<((u32, u32), BigInt)>, BigInt) {
        let den = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.numer() * (&den / c.denom())))
            .collect();
        (terms, den)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        // integer convolution, one normalization per output term
        let (a, da) = self.cleared();
        let (b, db) = rhs.cleared();
        let mut acc: HashMap<(u32, u32), BigInt> = HashMap::with_capacity(a.len() * b.len().min(64));
        for ((i1, j1), c1) in &a {
            for ((i2, j2), c2) in &b {
                let t = c1 * c2;
                acc.entry((i1 + i2, j1 + j2)).and_modify(|v| *v += &t).or_insert(t);
            }
        }
        let den = da * db;
        BiPoly {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, Rational::new(c, den.clone())))
                .collect(),
        }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
