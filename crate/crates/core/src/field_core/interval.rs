//! Closed intervals with outward rounding over two endpoint kinds: `f64`
//! (fast, used for subdivision) and `Dyadic` (any precision, used for
//! certification and reported values).

use std::fmt::Debug;

use crate::exact_arith::{rational::from_f64_exact, Rational};

use super::dyadic::{Dyadic, Round};

/// Number type usable as an interval endpoint. Each operation returns a
/// bound in the requested direction.
pub trait Endpoint: Clone + Debug + PartialOrd + Send + Sync {
    fn zero_like(&self) -> Self;
    fn from_rational(r: &Rational, prec: u32, dir: Round) -> Self;
    fn add(&self, o: &Self, dir: Round) -> Self;
    fn mul(&self, o: &Self, dir: Round) -> Self;
    fn div(&self, o: &Self, dir: Round) -> Self;
    fn sqrt(&self, dir: Round) -> Self;
    fn neg(&self) -> Self;
    fn signum(&self) -> i32;
    fn to_f64(&self) -> f64;
    /// Exact value; `None` for non-finite endpoints.
    fn to_rational(&self) -> Option<Rational>;
    fn sub(&self, o: &Self, dir: Round) -> Self {
        self.add(&o.neg(), dir)
    }
}

impl Endpoint for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }

    fn from_rational(r: &Rational, _prec: u32, dir: Round) -> Self {
        let v = crate::exact_arith::rational::to_f64(r);
        if !v.is_finite() {
            return v;
        }
        let back = from_f64_exact(v);
        match dir {
            Round::Down if &back > r => v.next_down(),
            Round::Up if &back < r => v.next_up(),
            _ => v,
        }
    }

    fn add(&self, o: &Self, dir: Round) -> Self {
        let s = self + o;
        if !s.is_finite() {
            return s;
        }
        // two-sum error term decides whether rounding went the wrong way
        let bb = s - self;
        let err = (self - (s - bb)) + (o - bb);
        directed(s, err, dir)
    }

    fn mul(&self, o: &Self, dir: Round) -> Self {
        let p = self * o;
        if !p.is_finite() {
            return p;
        }
        let err = self.mul_add(*o, -p);
        if p == 0.0 && *self != 0.0 && *o != 0.0 {
            // underflow to zero
            return match (dir, (*self > 0.0) == (*o > 0.0)) {
                (Round::Up, true) => f64::from_bits(1),
                (Round::Down, false) => -f64::from_bits(1),
                _ => 0.0,
            };
        }
        if p.is_subnormal() {
            return match dir {
                Round::Down => p.next_down(),
                Round::Up => p.next_up(),
            };
        }
        directed(p, err, dir)
    }

    fn div(&self, o: &Self, dir: Round) -> Self {
        let q = self / o;
        if !q.is_finite() || q == 0.0 || q.is_subnormal() {
            if q.is_finite() && *self != 0.0 {
                return match dir {
                    Round::Down => q.next_down(),
                    Round::Up => q.next_up(),
                };
            }
            return q;
        }
        // self - q*o exactly; its sign relative to o gives the error sign
        let r = -q.mul_add(*o, -self);
        let err = if *o > 0.0 { r } else { -r };
        directed(q, err, dir)
    }

    fn sqrt(&self, dir: Round) -> Self {
        let s = f64::sqrt(self.max(0.0));
        if s == 0.0 || !s.is_finite() {
            return s;
        }
        let err = -s.mul_add(s, -self.max(0.0));
        directed(s, err, dir)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn signum(&self) -> i32 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        self.is_finite().then(|| from_f64_exact(*self))
    }
}

/// `v` is the rounded result and `err` the sign of `exact - v`.
fn directed(v: f64, err: f64, dir: Round) -> f64 {
    match dir {
        Round::Down if err < 0.0 => v.next_down(),
        Round::Up if err > 0.0 => v.next_up(),
        _ => v,
    }
}

impl Endpoint for Dyadic {
    fn zero_like(&self) -> Self {
        Dyadic::zero(self.prec())
    }

    fn from_rational(r: &Rational, prec: u32, dir: Round) -> Self {
        Dyadic::from_rational(r, prec, dir)
    }

    fn add(&self, o: &Self, dir: Round) -> Self {
        Dyadic::add(self, o, dir)
    }

    fn mul(&self, o: &Self, dir: Round) -> Self {
        Dyadic::mul(self, o, dir)
    }

    fn div(&self, o: &Self, dir: Round) -> Self {
        Dyadic::div(self, o, dir)
    }

    fn sqrt(&self, dir: Round) -> Self {
        if self.signum() < 0 {
            return Dyadic::zero(self.prec());
        }
        Dyadic::sqrt(self, dir)
    }

    fn neg(&self) -> Self {
        Dyadic::neg(self)
    }

    fn signum(&self) -> i32 {
        Dyadic::signum(self)
    }

    fn to_f64(&self) -> f64 {
        Dyadic::to_f64(self)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(Dyadic::to_rational(self))
    }
}

fn emin<E: Endpoint>(a: E, b: E) -> E {
    if b < a {
        b
    } else {
        a
    }
}

fn emax<E: Endpoint>(a: E, b: E) -> E {
    if b > a {
        b
    } else {
        a
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Interval<E> {
    pub lo: E,
    pub hi: E,
}

pub type F64Interval = Interval<f64>;
pub type DyadicInterval = Interval<Dyadic>;

impl<E: Endpoint> Interval<E> {
    pub fn new(lo: E, hi: E) -> Self {
        debug_assert!(!(hi < lo), "inverted interval {lo:?} > {hi:?}");
        Self { lo, hi }
    }

    pub fn point(v: E) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    /// Tightest enclosure of a rational at precision `prec`.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self {
            lo: E::from_rational(r, prec, Round::Down),
            hi: E::from_rational(r, prec, Round::Up),
        }
    }

    pub fn from_rationals(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        Self {
            lo: E::from_rational(lo, prec, Round::Down),
            hi: E::from_rational(hi, prec, Round::Up),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            lo: self.lo.add(&o.lo, Round::Down),
            hi: self.hi.add(&o.hi, Round::Up),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            lo: self.lo.sub(&o.hi, Round::Down),
            hi: self.hi.sub(&o.lo, Round::Up),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.lo, &self.hi, &o.lo, &o.hi);
        // sign-case split keeps the common cases to two products
        match (a.signum() >= 0, b.signum() <= 0, c.signum() >= 0, d.signum() <= 0) {
            (true, _, true, _) => Self::new(a.mul(c, Round::Down), b.mul(d, Round::Up)),
            (_, true, _, true) => Self::new(b.mul(d, Round::Down), a.mul(c, Round::Up)),
            (true, _, _, true) => Self::new(b.mul(c, Round::Down), a.mul(d, Round::Up)),
            (_, true, true, _) => Self::new(a.mul(d, Round::Down), b.mul(c, Round::Up)),
            _ => {
                let lo = [a.mul(c, Round::Down), a.mul(d, Round::Down), b.mul(c, Round::Down), b.mul(d, Round::Down)]
                    .into_iter()
                    .reduce(emin)
                    .expect("nonempty");
                let hi = [a.mul(c, Round::Up), a.mul(d, Round::Up), b.mul(c, Round::Up), b.mul(d, Round::Up)]
                    .into_iter()
                    .reduce(emax)
                    .expect("nonempty");
                Self::new(lo, hi)
            }
        }
    }

    pub fn sqr(&self) -> Self {
        if self.lo.signum() >= 0 {
            Self::new(self.lo.mul(&self.lo, Round::Down), self.hi.mul(&self.hi, Round::Up))
        } else if self.hi.signum() <= 0 {
            Self::new(self.hi.mul(&self.hi, Round::Down), self.lo.mul(&self.lo, Round::Up))
        } else {
            let a = self.lo.mul(&self.lo, Round::Up);
            let b = self.hi.mul(&self.hi, Round::Up);
            Self::new(self.lo.zero_like(), emax(a, b))
        }
    }

    /// `1/self`, or `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let one = E::from_rational(&Rational::from_integer(1.into()), 64, Round::Down);
        Some(Self::new(one.div(&self.hi, Round::Down), one.div(&self.lo, Round::Up)))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let (a, b, c, d) = (&self.lo, &self.hi, &o.lo, &o.hi);
        if c.signum() > 0 {
            // positive denominator
            let lo = if a.signum() >= 0 { a.div(d, Round::Down) } else { a.div(c, Round::Down) };
            let hi = if b.signum() >= 0 { b.div(c, Round::Up) } else { b.div(d, Round::Up) };
            Some(Self::new(lo, hi))
        } else {
            self.neg().div(&o.neg())
        }
    }

    /// Square root of the nonnegative part.
    pub fn sqrt(&self) -> Self {
        Self::new(self.lo.sqrt(Round::Down), self.hi.sqrt(Round::Up))
    }

    /// `self^k` for small `k`.
    pub fn powi(&self, k: u32) -> Self {
        match k {
            0 => {
                let one = E::from_rational(&Rational::from_integer(1.into()), 64, Round::Down);
                Self::point(one)
            }
            1 => self.clone(),
            _ if k % 2 == 0 => self.powi(k / 2).sqr(),
            _ => self.powi(k - 1).mul(self),
        }
    }

    pub fn scale(&self, r: &Rational, prec: u32) -> Self {
        self.mul(&Self::from_rational(r, prec))
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// True when every element is nonzero, with its sign.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &E) -> bool {
        !(v < &self.lo) && !(v > &self.hi)
    }

    /// `o` lies strictly inside `self`.
    pub fn interior_contains(&self, o: &Self) -> bool {
        self.lo < o.lo && o.hi < self.hi
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = emax(self.lo.clone(), o.lo.clone());
        let hi = emin(self.hi.clone(), o.hi.clone());
        (lo <= hi).then(|| Self::new(lo, hi))
    }

    pub fn hull(&self, o: &Self) -> Self {
        Self::new(emin(self.lo.clone(), o.lo.clone()), emax(self.hi.clone(), o.hi.clone()))
    }

    pub fn width_f64(&self) -> f64 {
        self.hi.sub(&self.lo, Round::Up).to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * self.lo.to_f64() + 0.5 * self.hi.to_f64()
    }

    /// Largest absolute value, rounded up.
    pub fn mag(&self) -> E {
        emax(self.lo.neg(), self.hi.clone())
    }
}
