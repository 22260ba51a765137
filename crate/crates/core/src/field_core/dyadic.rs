//! Binary floating point with arbitrary mantissa and directed rounding.
//!
//! A `Dyadic` is `mant * 2^exp`. Every operation takes the larger of the
//! operand precisions and rounds the exact result down or up to that many
//! mantissa bits, so chained operations give rigorous one-sided bounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact_arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn floor_shr(m: &BigInt, k: u64) -> BigInt {
    // num-bigint shifts of negative values round toward -inf
    m >> k
}

impl Dyadic {
    pub fn zero(prec: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::new(BigInt::from(v), 0, prec, Round::Down)
    }

    /// `mant * 2^exp`, rounded to `prec` bits.
    pub fn new(mant: BigInt, exp: i64, prec: u32, dir: Round) -> Self {
        let mut d = Self { mant, exp, prec };
        d.round(dir);
        d
    }

    /// Exact conversion; the precision is widened to 53 bits if needed.
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        let r = Rational::from_float(v).expect("finite");
        // finite doubles are dyadic, so this is exact at 64+ bits
        let p = prec.max(64);
        let mut d = Self::from_rational(&r, p, Round::Down);
        d.prec = prec;
        d
    }

    pub fn from_rational(r: &Rational, prec: u32, dir: Round) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        let n = r.numer();
        let d = r.denom();
        if d.is_one() {
            return Self::new(n.clone(), 0, prec, dir);
        }
        // scale so the quotient carries at least prec + 2 bits
        let shift = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (num, den) = if shift >= 0 {
            (n << shift as u64, d.clone())
        } else {
            (n.clone(), d << (-shift) as u64)
        };
        let (q, rem) = num.div_mod_floor(&den);
        let q = if dir == Round::Up && !rem.is_zero() {
            q + 1
        } else {
            q
        };
        Self::new(q, -shift, prec, dir)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32, dir: Round) -> Self {
        self.prec = prec;
        self.round(dir);
        self
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn round(&mut self, dir: Round) {
        let bits = self.mant.bits();
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if bits > self.prec as u64 {
            let k = bits - self.prec as u64;
            let m = match dir {
                Round::Down => floor_shr(&self.mant, k),
                Round::Up => -floor_shr(&-&self.mant, k),
            };
            self.mant = m;
            self.exp += k as i64;
        }
        // strip trailing zero bits so equal values have equal representations
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    fn align(a: &Self, b: &Self) -> (BigInt, BigInt, i64) {
        let e = a.exp.min(b.exp);
        (
            &a.mant << (a.exp - e) as u64,
            &b.mant << (b.exp - e) as u64,
            e,
        )
    }

    pub fn add(&self, o: &Self, dir: Round) -> Self {
        if self.is_zero() {
            return o.clone().with_prec(self.prec.max(o.prec), dir);
        }
        if o.is_zero() {
            return self.clone().with_prec(self.prec.max(o.prec), dir);
        }
        let prec = self.prec.max(o.prec);
        // An addend below 2^e, where 2^e is finer than both the rounding grid
        // and the larger operand's last bit, rounds like any other value of
        // the same sign below 2^e; replace it by 2^(e-1) to skip a huge shift.
        let top_a = self.exp + self.mant.bits() as i64;
        let top_b = o.exp + o.mant.bits() as i64;
        let (big, small) = if top_a >= top_b { (self, o) } else { (o, self) };
        let top_big = big.exp + big.mant.bits() as i64;
        let top_small = small.exp + small.mant.bits() as i64;
        let e = big.exp.min(top_big - prec as i64 - 2) - 1;
        if top_small <= e {
            let m = (&big.mant << (big.exp - e + 1) as u64) + BigInt::from(small.signum());
            return Self::new(m, e - 1, prec, dir);
        }
        let (x, y, e) = Self::align(self, o);
        Self::new(x + y, e, prec, dir)
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Self, dir: Round) -> Self {
        self.add(&o.neg(), dir)
    }

    pub fn mul(&self, o: &Self, dir: Round) -> Self {
        Self::new(
            &self.mant * &o.mant,
            self.exp + o.exp,
            self.prec.max(o.prec),
            dir,
        )
    }

    /// Quotient rounded in `dir`. Panics on division by zero.
    pub fn div(&self, o: &Self, dir: Round) -> Self {
        assert!(!o.is_zero(), "division by zero");
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = prec as i64 + 2 + o.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = shift.max(0);
        let num = &self.mant << shift as u64;
        let (q, r) = num.div_mod_floor(&o.mant);
        let q = if dir == Round::Up && !r.is_zero() {
            q + 1
        } else {
            q
        };
        Self::new(q, self.exp - o.exp - shift, prec, dir)
    }

    /// Square root of a nonnegative value, rounded in `dir`.
    pub fn sqrt(&self, dir: Round) -> Self {
        assert!(self.signum() >= 0, "sqrt of negative");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        let mut shift = 2 * (prec as i64 + 2) - self.mant.bits() as i64;
        shift = shift.max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let s = m.sqrt();
        let s = if dir == Round::Up && &s * &s != m {
            s + 1
        } else {
            s
        };
        Self::new(s, (self.exp - shift) / 2, prec, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish `f64` (not directed).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let k = (bits - 62).max(0);
        let m = floor_shr(&self.mant, k as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + k;
        let e = e.clamp(-3000, 3000) as i32;
        // split the scaling to avoid intermediate overflow
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// `f64` not above the value.
    pub fn to_f64_down(&self) -> f64 {
        let v = self.to_f64();
        if Dyadic::from_f64_lossless(v).map_or(true, |d| d.cmp_value(self) == Ordering::Greater) {
            v.next_down()
        } else {
            v
        }
    }

    /// `f64` not below the value.
    pub fn to_f64_up(&self) -> f64 {
        let v = self.to_f64();
        if Dyadic::from_f64_lossless(v).map_or(true, |d| d.cmp_value(self) == Ordering::Less) {
            v.next_up()
        } else {
            v
        }
    }

    fn from_f64_lossless(v: f64) -> Option<Self> {
        v.is_finite().then(|| Self::from_f64(v, 64))
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn cmp_value(&self, o: &Self) -> Ordering {
        let (a, b) = (self.signum(), o.signum());
        if a != b {
            return a.cmp(&b);
        }
        if a == 0 {
            return Ordering::Equal;
        }
        let ta = self.exp + self.mant.bits() as i64;
        let tb = o.exp + o.mant.bits() as i64;
        if ta != tb {
            let ord = ta.cmp(&tb);
            return if a > 0 { ord } else { ord.reverse() };
        }
        let (x, y, _) = Self::align(self, o);
        x.cmp(&y)
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a.cmp_value(b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a.cmp_value(b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// `2^k` exactly.
    pub fn pow2(k: i64, prec: u32) -> Self {
        Self {
            mant: BigInt::one(),
            exp: k,
            prec,
        }
    }

    /// Base-2 exponent of the top bit; `None` for zero.
    pub fn magnitude_log2(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + self.mant.bits() as i64)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp_value(o))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}
