//! Arbitrary-precision rational scalars and a few helpers the rest of the
//! crate leans on.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Rational from a numerator / denominator pair of machine integers.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn rat_i(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Error raised when a string does not denote an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl std::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "not a rational number: {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"a/b"`, plain integers, and finite decimal literals such as
/// `"-1.85"` into an exact rational. Whitespace at either end is ignored.
pub fn parse_rational(s: &str) -> Result<Rat, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((w, f)) = t.split_once('.') {
        // Finite decimals are exact: a.b = (a * 10^|b| +- b) / 10^|b|.
        let neg = w.starts_with('-');
        let w_clean = w.strip_prefix(['+', '-']).unwrap_or(w);
        if !w_clean.chars().all(|c| c.is_ascii_digit()) || w_clean.is_empty() {
            return Err(err());
        }
        if f.is_empty() || !f.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let whole = BigInt::from_str(w_clean).map_err(|_| err())?;
        let frac = BigInt::from_str(f).map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(f.len() as u32);
        let mut num = whole * &scale + frac;
        if neg {
            num = -num;
        }
        return Ok(BigRational::new(num, scale));
    }
    let n = BigInt::from_str(t).map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

/// Renders `x` as a decimal string with `digits` places after the point,
/// rounding toward zero. Used only for human-facing output.
pub fn to_decimal(x: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (x * BigRational::from_integer(scale.clone())).trunc();
    let v = scaled.to_integer();
    let neg = v.sign() == Sign::Minus;
    let abs = v.abs();
    let (q, r) = num_integer::Integer::div_rem(&abs, &scale);
    let mut frac = r.to_string();
    while (frac.len() as u32) < digits {
        frac.insert(0, '0');
    }
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{q}")
    } else {
        format!("{sign}{q}.{frac}")
    }
}

/// `x^e` for unsigned `e`, exact.
pub fn pow_u(x: &Rat, e: u32) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    BigRational::new_raw(x.numer().pow(e), x.denom().pow(e))
}

/// Sign of `x` as -1, 0, or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Natural logarithm of a positive rational, approximate.
///
/// Works for values far outside `f64` range by peeling the bit length:
/// `ln(n/d) = ln n - ln d` and `ln n = (bits - 53) ln 2 + ln(top 53 bits)`.
/// Accuracy is far better than the heuristic exponent search needs.
pub fn ln_approx(x: &Rat) -> f64 {
    assert!(x.is_positive(), "ln of non-positive rational");
    ln_big(x.numer()) - ln_big(x.denom())
}

fn ln_big(n: &BigInt) -> f64 {
    let n = n.magnitude();
    let bits = n.bits();
    if bits <= 53 {
        return (n.to_f64().unwrap()).ln();
    }
    let shift = bits - 53;
    let top = (n >> shift).to_f64().unwrap();
    (shift as f64) * std::f64::consts::LN_2 + top.ln()
}

/// Approximate `x` as an `f64`, saturating on overflow. Heuristics only.
pub fn to_f64_approx(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let s = if x.is_positive() { 1.0 } else { -1.0 };
    let a = x.abs();
    let l = ln_approx(&a);
    if l > 700.0 {
        s * f64::INFINITY
    } else if l < -700.0 {
        0.0
    } else {
        s * l.exp()
    }
}
