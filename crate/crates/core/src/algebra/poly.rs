//! Univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros;
//! the zero polynomial is the empty coefficient vector.

use super::rat::{pow_u, rat_i, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        UniPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// Convenience constructor from machine-integer coefficients in
    /// ascending degree order.
    pub fn from_ints(cs: &[i64]) -> Self {
        UniPoly::new(cs.iter().map(|&c| rat_i(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_i(i as i64))
            .collect();
        UniPoly::new(cs)
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Division with remainder. Panics if `div` is zero.
    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() < div.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![Rat::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[i + j] = &rem[i + j] - t;
            }
            quot[i] = c;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact quotient. Panics if the division leaves a remainder.
    pub fn exact_div(&self, div: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// The product of the distinct irreducible factors, monic. Root set is
    /// preserved; multiplicities collapse to one.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().map_or(true, |d| d == 0) {
            return UniPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Content-free integer rendering for display: clears denominators and
    /// divides out the integer content, keeping the leading sign.
    pub fn to_display_string(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coeff = if mag.is_one() && i > 0 {
                String::new()
            } else {
                format!("{mag}")
            };
            let term = match i {
                0 => {
                    if coeff.is_empty() {
                        "1".to_string()
                    } else {
                        coeff
                    }
                }
                1 => format!("{coeff}{var}"),
                _ => format!("{coeff}{var}^{i}"),
            };
            if parts.is_empty() {
                if c.is_negative() {
                    parts.push(format!("-{term}"));
                } else {
                    parts.push(term);
                }
            } else if c.is_negative() {
                parts.push(format!(" - {term}"));
            } else {
                parts.push(format!(" + {term}"));
            }
        }
        parts.concat()
    }

    /// Evaluates coefficients of `self` at `x` raised term by term with a
    /// precomputed power ladder. Equivalent to `eval` but reuses powers when
    /// many polynomials are evaluated at the same point.
    pub fn eval_with_powers(&self, powers: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &powers[i];
            }
        }
        acc
    }
}

/// Power ladder `[1, x, x^2, ..., x^n]`.
pub fn power_ladder(x: &Rat, n: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rat::one());
    for i in 1..=n {
        out.push(&out[i - 1] * x);
    }
    debug_assert!(out.last().map_or(true, |p| *p == pow_u(x, n as u32)));
    out
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut cs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            cs.push(a + b);
        }
        UniPoly::new(cs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut cs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                cs[i + j] += a * b;
            }
        }
        UniPoly::new(cs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display_string("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn eval_and_arith() {
        // q^3 - 2q - 1 at q = 2 is 3.
        let p = UniPoly::from_ints(&[-1, -2, 0, 1]);
        assert_eq!(p.eval(&rat_i(2)), rat_i(3));
        assert_eq!(p.eval(&rat(-1, 2)), rat(-1, 8));
        let q = UniPoly::from_ints(&[1, 1]);
        let prod = &p * &q;
        assert_eq!(prod.eval(&rat_i(3)), p.eval(&rat_i(3)) * rat_i(4));
        assert_eq!((&p - &p), UniPoly::zero());
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn divrem_roundtrip() {
        let a = UniPoly::from_ints(&[2, -3, 0, 5, 1]);
        let b = UniPoly::from_ints(&[1, 4, 2]);
        let (q, r) = a.divrem(&b);
        let back = &(&q * &b) + &r;
        assert_eq!(back, a);
        assert!(r.degree().unwrap() < b.degree().unwrap());
    }

    #[test]
    fn gcd_and_squarefree() {
        // (q - 1)^2 (q + 2) shares (q - 1) with (q - 1)(q - 3).
        let a = &UniPoly::from_ints(&[-1, 1]).pow(2) * &UniPoly::from_ints(&[2, 1]);
        let b = &UniPoly::from_ints(&[-1, 1]) * &UniPoly::from_ints(&[-3, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
        let sf = a.squarefree_part();
        assert_eq!(sf, &UniPoly::from_ints(&[-1, 1]) * &UniPoly::from_ints(&[2, 1]));
        assert_eq!(UniPoly::from_ints(&[7]).gcd(&UniPoly::zero()), UniPoly::one());
    }

    #[test]
    fn compose_and_pow() {
        let p = UniPoly::from_ints(&[0, 0, 1]);
        let g = UniPoly::from_ints(&[1, 1]);
        // (q + 1)^2 = q^2 + 2q + 1
        assert_eq!(p.compose(&g), UniPoly::from_ints(&[1, 2, 1]));
        assert_eq!(g.pow(3), UniPoly::from_ints(&[1, 3, 3, 1]));
        assert_eq!(g.pow(0), UniPoly::one());
    }

    #[test]
    fn display_forms() {
        let p = UniPoly::from_ints(&[3, 0, -3, 1]);
        assert_eq!(p.to_display_string("q"), "q^3 - 3q^2 + 3");
        assert_eq!(UniPoly::zero().to_display_string("q"), "0");
        assert_eq!(UniPoly::from_ints(&[-1, 1]).to_display_string("q"), "q - 1");
    }

    #[test]
    fn ladder_matches_eval() {
        let p = UniPoly::from_ints(&[5, -1, 0, 2, 7]);
        let x = rat(-3, 7);
        let ladder = power_ladder(&x, p.degree().unwrap());
        assert_eq!(p.eval_with_powers(&ladder), p.eval(&x));
    }
}
