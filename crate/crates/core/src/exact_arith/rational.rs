//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which keeps values in lowest
//! terms with a positive denominator. This module adds the parsing and
//! formatting conventions used by configs and reports.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ArithError;

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a decimal with optional exponent
/// (`"-1.25"`, `"3e-4"`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let t = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}0").parse().map_err(|_| bad())?;
    // the trailing "0" keeps empty strings parseable; undo it here
    let digits = digits / BigInt::from(10);
    let scale = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    let mut v = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest-ish `f64`; exact for small dyadic values, never panics.
pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale both parts down to avoid overflow in the conversion.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = (nb - 60).max(0);
    let dshift = (db - 60).max(0);
    let n = (r.numer() >> shift as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> dshift as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift - dshift) as i32)
}

/// Exact conversion of a finite `f64`.
pub fn from_f64_exact(v: f64) -> Rational {
    Rational::from_float(v).expect("finite float")
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn sign(r: &Rational) -> Ordering {
    r.cmp(&Rational::zero())
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Smallest dyadic rational `>= r` with denominator `2^bits`.
pub fn dyadic_ceil(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = r * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

/// Largest dyadic rational `<= r` with denominator `2^bits`.
pub fn dyadic_floor(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = r * Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

/// The dyadic rational with the smallest denominator that is nearest to the
/// midpoint of `(lo, hi)`. Keeps bisection points small.
pub fn simple_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    let mid = (lo + hi) / int(2);
    let mut scale = BigInt::one();
    loop {
        let s = Rational::from_integer(scale.clone());
        let cand = Rational::new((&mid * &s).round().to_integer(), scale.clone());
        if &cand > lo && &cand < hi {
            return cand;
        }
        scale <<= 1usize;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("3e-4").unwrap(), rat(3, 10000));
        assert_eq!(parse_rational("2.5E2").unwrap(), int(250));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-3, 9)), "-1/3");
    }

    #[test]
    fn simple_between_is_inside() {
        let lo = rat(1, 3);
        let hi = rat(1, 2);
        let m = simple_between(&lo, &hi);
        assert!(m > lo && m < hi);
        assert!(m.denom().bits() <= 4);
    }

    #[test]
    fn huge_values_convert() {
        let big = Rational::from_integer(BigInt::one() << 2000usize) / int(3);
        assert!(to_f64(&big).is_infinite() || to_f64(&big) > 1e300);
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 1100usize);
        assert_eq!(to_f64(&tiny), 0.0);
    }
}
