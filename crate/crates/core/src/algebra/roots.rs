//! Real root isolation and bracket refinement via Sturm sequences.

use super::poly::UniPoly;
use super::rat::{rat, sign, Rat};
use num_traits::{One, Signed, Zero};

/// A closed interval `[lo, hi]` with `lo < hi`.
///
/// Brackets produced by [`isolate_real_roots`] additionally satisfy: the
/// polynomial is nonzero at both endpoints and has exactly one distinct real
/// root in the open interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: Rat,
    pub hi: Rat,
}

impl Bracket {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo < hi, "empty bracket");
        Bracket { lo, hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    /// The polynomial has the same sign at both bracket endpoints, or
    /// vanishes at one of them; bisection cannot certify a root.
    NoSignChange,
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::NoSignChange => write!(f, "no sign change across bracket"),
        }
    }
}

impl std::error::Error for RootError {}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(sf: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
        chain.push(-&r);
    }
}

/// Number of sign variations of the chain evaluated at `x`.
fn variations(chain: &[UniPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut prev = 0i32;
    for p in chain {
        let s = sign(&p.eval(x));
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

/// Distinct real roots of `p` in the open interval `(a, b)`.
///
/// Panics if `p` vanishes at either endpoint or `p` is the zero polynomial.
pub fn count_roots_open(p: &UniPoly, a: &Rat, b: &Rat) -> usize {
    assert!(!p.is_zero(), "root count of zero polynomial");
    assert!(a < b, "empty interval");
    let sf = p.squarefree_part();
    if sf.degree() == Some(0) {
        return 0;
    }
    let chain = sturm_chain(&sf);
    assert!(!sf.eval(a).is_zero() && !sf.eval(b).is_zero(), "root at interval endpoint");
    variations(&chain, a) - variations(&chain, b)
}

/// Distinct real roots of `p` in the closed interval `[a, b]`.
pub fn count_roots_closed(p: &UniPoly, a: &Rat, b: &Rat) -> usize {
    isolate_real_roots(p, a, b).len()
}

struct Isolator {
    sf: UniPoly,
    chain: Vec<UniPoly>,
    out: Vec<Bracket>,
}

impl Isolator {
    fn count(&self, a: &Rat, b: &Rat) -> usize {
        variations(&self.chain, a) - variations(&self.chain, b)
    }

    /// Shrinks a symmetric interval around the known root `m` until it
    /// contains no other root and its endpoints are not roots.
    fn enclose_known_root(&mut self, m: &Rat, mut delta: Rat) {
        loop {
            let lo = m - &delta;
            let hi = m + &delta;
            if !self.sf.eval(&lo).is_zero()
                && !self.sf.eval(&hi).is_zero()
                && self.count(&lo, &hi) == 1
            {
                self.out.push(Bracket::new(lo, hi));
                return;
            }
            delta /= rat(2, 1);
        }
    }

    /// Splits `(a, b)` with nonzero endpoints into isolating brackets.
    fn bisect(&mut self, a: Rat, b: Rat) {
        let n = self.count(&a, &b);
        if n == 0 {
            return;
        }
        if n == 1 {
            self.out.push(Bracket::new(a, b));
            return;
        }
        let m = (&a + &b) / rat(2, 1);
        if self.sf.eval(&m).is_zero() {
            let gap = (&m - &a).min(&b - &m) / rat(2, 1);
            self.enclose_known_root(&m.clone(), gap);
            let Bracket { lo, hi } = self.out.last().unwrap().clone();
            self.bisect(a, lo);
            self.bisect(hi, b);
        } else {
            self.bisect(a, m.clone());
            self.bisect(m, b);
        }
    }
}

/// Isolating brackets for every distinct real root of `p` in the closed
/// window `[lo, hi]`, sorted by position.
///
/// Each bracket contains exactly one root in its open interior and `p` is
/// nonzero at its endpoints. A root sitting exactly on a window endpoint is
/// still reported; its bracket then extends slightly beyond the window.
///
/// Panics if `p` is the zero polynomial.
pub fn isolate_real_roots(p: &UniPoly, lo: &Rat, hi: &Rat) -> Vec<Bracket> {
    assert!(!p.is_zero(), "isolating roots of zero polynomial");
    assert!(lo < hi, "empty window");
    let sf = p.squarefree_part();
    if sf.degree() == Some(0) {
        return vec![];
    }
    let chain = sturm_chain(&sf);
    let mut iso = Isolator { sf, chain, out: vec![] };
    let quarter = (hi - lo) / rat(4, 1);
    let mut a = lo.clone();
    let mut b = hi.clone();
    if iso.sf.eval(lo).is_zero() {
        iso.enclose_known_root(lo, quarter.clone());
        a = iso.out.last().unwrap().hi.clone();
    }
    let mut hi_bracket = None;
    if iso.sf.eval(hi).is_zero() {
        iso.enclose_known_root(hi, quarter);
        hi_bracket = iso.out.pop();
        b = hi_bracket.as_ref().unwrap().lo.clone();
    }
    if a < b {
        iso.bisect(a, b);
    }
    if let Some(br) = hi_bracket {
        iso.out.push(br);
    }
    iso.out.sort_by(|x, y| x.lo.cmp(&y.lo));
    iso.out
}

/// Shrinks an isolating bracket until its width is at most `max_width`,
/// keeping a strict sign change of the squarefree part across it.
///
/// Returns [`RootError::NoSignChange`] when the input does not exhibit a
/// sign change, including the case of a root at an endpoint.
pub fn refine_bracket(p: &UniPoly, b: &Bracket, max_width: &Rat) -> Result<Bracket, RootError> {
    assert!(!p.is_zero(), "refining bracket of zero polynomial");
    let sf = p.squarefree_part();
    let mut lo = b.lo.clone();
    let mut hi = b.hi.clone();
    let mut s_lo = sign(&sf.eval(&lo));
    let s_hi = sign(&sf.eval(&hi));
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(RootError::NoSignChange);
    }
    while &(&hi - &lo) > max_width {
        let m = (&lo + &hi) / rat(2, 1);
        let s_m = sign(&sf.eval(&m));
        if s_m == 0 {
            // The root is exactly the midpoint; wrap it tightly while
            // keeping nonzero endpoints of opposite sign.
            let mut d = (max_width / rat(2, 1)).min((&hi - &lo) / rat(4, 1));
            loop {
                let l = &m - &d;
                let h = &m + &d;
                let sl = sign(&sf.eval(&l));
                let sh = sign(&sf.eval(&h));
                if sl != 0 && sh != 0 && sl != sh {
                    return Ok(Bracket::new(l, h));
                }
                d /= rat(2, 1);
            }
        }
        if s_m == s_lo {
            lo = m;
            s_lo = s_m;
        } else {
            hi = m;
        }
    }
    Ok(Bracket::new(lo, hi))
}

/// A rational B with every real root of `p` strictly inside (-B, B).
/// Returns 2 + max |a_i| / |a_n|, one more than the Cauchy bound, so the
/// containment is strict.
///
/// Panics on the zero polynomial; constants get B = 2.
pub fn cauchy_root_bound(p: &UniPoly) -> Rat {
    assert!(!p.is_zero(), "root bound of zero polynomial");
    let lead = p.leading().unwrap();
    let mut m = Rat::zero();
    let coeffs = p.coeffs();
    for c in &coeffs[..coeffs.len() - 1] {
        let ratio = (c / lead).abs();
        if ratio > m {
            m = ratio;
        }
    }
    &Rat::one() + &(&m + &Rat::one())
}
