//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, format_rational, int, Rational};
use super::ArithError;

/// Coefficients indexed by degree. The leading coefficient is nonzero; the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring operation on two polynomials.
pub fn uni_arith(a: &UniPoly, b: &UniPoly, op: UniOp) -> UniPoly {
    match op {
        UniOp::Add => a + b,
        UniOp::Sub => a - b,
        UniOp::Mul => a * b,
    }
}

pub fn uni_differentiate(p: &UniPoly) -> UniPoly {
    p.derivative()
}

/// Monic gcd; rejects the case where both inputs are zero.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, ArithError> {
    UniPoly::gcd(a, b)
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Lowest-degree coefficient first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::rational::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn shift_degree(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    rem[k + i] -= t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// True iff `d` divides `self` exactly. Zero divides only zero.
    pub fn is_divisible_by(&self, d: &UniPoly) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        self.rem(d).is_zero()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Scales by a positive rational so that the coefficients are coprime
    /// integers. Sign pattern (and hence roots and Sturm behaviour) is kept.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        Self::from_coeffs(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &g))
                .collect(),
        )
    }

    /// Monic greatest common divisor. `gcd(p, 0)` is `p` made monic.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, ArithError> {
        if a.is_zero() && b.is_zero() {
            return Err(ArithError::GcdOfZeros);
        }
        let mut r0 = a.primitive();
        let mut r1 = b.primitive();
        while !r1.is_zero() {
            let r = r0.rem(&r1).primitive();
            r0 = r1;
            r1 = r;
        }
        Ok(r0.monic())
    }

    /// `p / gcd(p, p')`, made monic. Same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative()).expect("nonzero");
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        Self::gcd(self, &self.derivative())
            .map(|g| g.is_constant())
            .unwrap_or(true)
    }

    /// `x^n p(1/x)`; requires `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.degree().map_or(true, |d| d <= n));
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Largest `k` with `x^k | p`; zero for the zero polynomial.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `p / x^k` for `k = trailing_zeros()`.
    pub fn strip_x_powers(&self) -> Self {
        Self::from_coeffs(self.coeffs[self.trailing_zeros()..].to_vec())
    }

    /// Every real root satisfies `|r| < 1 + max |c_i / c_n|`.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return Rational::one();
        };
        let lead = lead.abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&a))?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}
