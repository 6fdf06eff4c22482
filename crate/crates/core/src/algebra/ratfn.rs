//! Rational functions in one variable, kept in lowest terms with monic
//! denominator.

use super::poly::UniPoly;
use super::rat::Rat;
use num_traits::Zero;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced rational function `num / den`.
///
/// Invariants: `den` is monic and nonzero, `gcd(num, den) = 1`, and the zero
/// function is represented as `0 / 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: UniPoly,
    den: UniPoly,
}

impl RatFn {
    /// Builds and reduces. Panics if `den` is the zero polynomial.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        let lead = den.leading().unwrap().clone();
        den = den.scale(&lead.recip());
        num = num.scale(&lead.recip());
        RatFn { num, den }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFn { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatFn::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        RatFn::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        RatFn::from_poly(UniPoly::one())
    }

    /// The identity function `q`.
    pub fn var() -> Self {
        RatFn::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Evaluates at `x`. Returns `None` on a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Reciprocal. Panics on the zero function.
    pub fn recip(&self) -> RatFn {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> RatFn {
        let mut acc = RatFn::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFn::new(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl std::fmt::Display for RatFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rat_i};

    #[test]
    fn reduction_invariants() {
        // (q^2 - 1) / (2q - 2) reduces to (q + 1) / 2 with monic denominator.
        let f = RatFn::new(UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[-2, 2]));
        assert_eq!(f.den(), &UniPoly::one());
        assert_eq!(f.num(), &UniPoly::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(f.eval(&rat_i(5)).unwrap(), rat_i(3));
    }

    #[test]
    fn arithmetic() {
        let q = RatFn::var();
        let one = RatFn::one();
        // q / (q - 1) + 1 / (1 - q) = (q - 1) / (q - 1) = 1
        let a = &q / &(&q - &one);
        let b = &one / &(&one - &q);
        assert_eq!(&a + &b, one);
        let c = &q * &q.recip();
        assert_eq!(c, RatFn::one());
    }

    #[test]
    fn poles() {
        let q = RatFn::var();
        let f = &RatFn::one() / &(&q - &RatFn::constant(rat_i(2)));
        assert_eq!(f.eval(&rat_i(2)), None);
        assert_eq!(f.eval(&rat_i(3)).unwrap(), rat_i(1));
    }

    #[test]
    fn series_of_three_unit_edges() {
        // Three edges of weight -1 in series have effective weight
        // -1 / (q^2 - 3q + 3); the value at q = 1 is -1.
        let q = RatFn::var();
        let v = RatFn::constant(rat_i(-1));
        // 1 + q/v_ser = (1 + q/v)^3 for three identical edges.
        let rhs = (&(&RatFn::one() + &(&q / &v))).pow(3);
        let v_ser = &q / &(&rhs - &RatFn::one());
        let expect = &(-&RatFn::one()) / &RatFn::from_poly(UniPoly::from_ints(&[3, -3, 1]));
        assert_eq!(v_ser, expect);
        assert_eq!(v_ser.eval(&rat_i(1)).unwrap(), rat_i(-1));
    }

    #[test]
    fn pow_zero_and_display() {
        let q = RatFn::var();
        assert_eq!(q.pow(0), RatFn::one());
        let f = &q / &(&q + &RatFn::one());
        assert_eq!(format!("{f}"), "(q) / (q + 1)");
    }
}
