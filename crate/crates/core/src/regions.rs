//! Exact classification of rational (q, v) points into the supported
//! regions, their duals, and the leftover boundary/unsupported sets.

use crate::algebra::poly::UniPoly;
use crate::algebra::rat::{rat, rat_i, Rat};
use crate::algebra::roots::{isolate_real_roots, refine_bracket, Bracket};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    IStar,
    IIStar,
    IIIStar,
    VStar,
    VIIIStar,
    IXStar,
    Boundary,
    Unsupported,
    NonNegativeV,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
            Region::IV => "IV",
            Region::V => "V",
            Region::VI => "VI",
            Region::VII => "VII",
            Region::VIII => "VIII",
            Region::IX => "IX",
            Region::IStar => "I*",
            Region::IIStar => "II*",
            Region::IIIStar => "III*",
            Region::VStar => "V*",
            Region::VIIIStar => "VIII*",
            Region::IXStar => "IX*",
            Region::Boundary => "Boundary",
            Region::Unsupported => "Unsupported",
            Region::NonNegativeV => "NonNegativeV",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionError {
    OutOfDomain { q: Rat },
    DivisionByZero,
}

impl std::fmt::Display for RegionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionError::OutOfDomain { q } => {
                write!(f, "q = {q} outside the open interval (0, 32/27)")
            }
            RegionError::DivisionByZero => write!(f, "dual point undefined at v = 0"),
        }
    }
}

impl std::error::Error for RegionError {}

/// Isolating brackets for the two curve branches bounding the zero-free
/// lens at a given q: v_plus for the middle root of v^3 - 2qv - q^2,
/// v_minus for the root of v^3 + 2v^2 - q in (-2, -4/3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondBranches {
    pub v_plus: Bracket,
    pub v_minus: Bracket,
    pub width: Rat,
}

fn diamond_cubic(q: &Rat) -> UniPoly {
    UniPoly::new(vec![-(q * q), -(&rat_i(2) * q), Rat::zero(), Rat::one()])
}

fn vminus_cubic(q: &Rat) -> UniPoly {
    UniPoly::new(vec![-q.clone(), Rat::zero(), rat_i(2), Rat::one()])
}

/// Refines `br` below `width` and further until it sits strictly inside
/// (lo_lim, hi_lim). The root is interior, so this terminates.
fn confine(p: &UniPoly, mut br: Bracket, width: &Rat, lo_lim: &Rat, hi_lim: &Rat) -> Bracket {
    let mut target = width.clone();
    loop {
        br = refine_bracket(p, &br, &target).expect("isolating bracket refines");
        if &br.lo > lo_lim && &br.hi < hi_lim {
            return br;
        }
        target = target / rat_i(2);
    }
}

/// Brackets of width at most `width` around the two branch values at q.
/// Defined on the open interval 0 < q < 32/27 only.
pub fn v_diamond(q: &Rat, width: &Rat) -> Result<DiamondBranches, RegionError> {
    if q <= &Rat::zero() || q >= &rat(32, 27) {
        return Err(RegionError::OutOfDomain { q: q.clone() });
    }
    assert!(width > &Rat::zero(), "bracket width must be positive");
    let p = diamond_cubic(q);
    let roots = isolate_real_roots(&p, &rat_i(-4), &rat_i(4));
    assert_eq!(roots.len(), 3, "three branches inside the cusp");
    let v_plus = confine(&p, roots[1].clone(), width, &rat(-8, 9), &Rat::zero());
    let p2 = vminus_cubic(q);
    let roots2 = isolate_real_roots(&p2, &rat_i(-2), &rat(-4, 3));
    assert_eq!(roots2.len(), 1, "one branch in (-2, -4/3)");
    let v_minus = confine(&p2, roots2[0].clone(), width, &rat_i(-2), &rat(-4, 3));
    Ok(DiamondBranches { v_plus, v_minus, width: width.clone() })
}

/// The reflected point (q, q/v).
pub fn dual_point(q: &Rat, v: &Rat) -> Result<(Rat, Rat), RegionError> {
    if v.is_zero() {
        return Err(RegionError::DivisionByZero);
    }
    Ok((q.clone(), q / v))
}

/// Exact side of v relative to the middle branch at q, assuming v is not
/// on the curve. Refines the middle-root bracket until v falls outside.
fn above_middle_branch(q: &Rat, v: &Rat) -> bool {
    let p = diamond_cubic(q);
    let roots = isolate_real_roots(&p, &rat_i(-4), &rat_i(4));
    debug_assert_eq!(roots.len(), 3);
    let mut br = roots[1].clone();
    loop {
        if v > &br.hi {
            return true;
        }
        if v < &br.lo {
            return false;
        }
        let target = br.width() / rat_i(4);
        br = refine_bracket(&p, &br, &target).expect("middle root refines");
    }
}

/// Maps a rational point to the unique region variant containing it.
/// All region definitions are strict inequalities; equality cases, curve
/// membership, the lens between the branches, and every uncovered leftover
/// classify as Boundary.
pub fn classify_region(q: &Rat, v: &Rat) -> Region {
    let zero = Rat::zero();
    let one = Rat::one();
    let two = rat_i(2);
    if v.is_zero() {
        return Region::Boundary;
    }
    if v > &zero {
        if q < &zero {
            let cap = -(q / &two);
            if *v < cap {
                return Region::IStar;
            }
            if *v == cap {
                return Region::Boundary;
            }
        }
        return Region::NonNegativeV;
    }
    let m2 = rat_i(-2);
    if q < &zero {
        if *v < m2 {
            return Region::I;
        }
        return Region::Boundary;
    }
    if q.is_zero() {
        return Region::Boundary;
    }
    let neg_q = -q.clone();
    if *v < m2 {
        if *q < one {
            return Region::II;
        }
        if *q == one {
            return Region::Boundary;
        }
        if *q < two {
            return Region::III;
        }
        if *q == two {
            return Region::Boundary;
        }
        if *v > neg_q {
            return Region::V;
        }
        if *v == neg_q {
            return Region::Boundary;
        }
        let four = rat_i(4);
        if *q > four {
            return Region::Unsupported;
        }
        if *q < four && *q != rat_i(3) {
            return Region::IV;
        }
        return Region::Boundary;
    }
    if *v == m2 {
        return Region::Boundary;
    }
    let m1 = rat_i(-1);
    let cusp = rat(32, 27);
    if *v < m1 {
        let neg2v = -(&two * v);
        if *q > neg2v {
            return Region::VStar;
        }
        if *q == neg2v {
            return Region::Boundary;
        }
        if *q > two {
            return Region::VI;
        }
        if *q == two {
            return Region::Boundary;
        }
        if *q > cusp {
            return Region::IX;
        }
        if *q == cusp {
            return Region::Boundary;
        }
        if *v < rat(-4, 3) {
            // Below the cusp, v is left of the lower branch exactly when
            // v^2 (v+2) < q; the cube map is increasing on (-2, -4/3).
            let g = &(v * v) * &(v + &two);
            if &g < q {
                return Region::VIII;
            }
        }
        return Region::Boundary;
    }
    if *v == m1 {
        return Region::Boundary;
    }
    // Strip -1 < v < 0.
    if *q > two {
        return Region::VII;
    }
    if *q == two {
        return Region::Boundary;
    }
    let half = -(q / &two);
    if *v > half {
        if *q < one {
            return Region::IIStar;
        }
        if *q == one {
            return Region::Boundary;
        }
        return Region::IIIStar;
    }
    if *v == half {
        return Region::Boundary;
    }
    if *q > cusp {
        return Region::IXStar;
    }
    if *q == cusp {
        return Region::Boundary;
    }
    if diamond_cubic(q).eval(v).is_zero() {
        return Region::Boundary;
    }
    if above_middle_branch(q, v) {
        return Region::VIIIStar;
    }
    Region::Boundary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::parse_rational;
    use num_traits::Signed;

    fn cl(q: &str, v: &str) -> Region {
        classify_region(&parse_rational(q).unwrap(), &parse_rational(v).unwrap())
    }

    #[test]
    fn one_point_in_each_region() {
        assert_eq!(cl("-1", "-3"), Region::I);
        assert_eq!(cl("1/2", "-3"), Region::II);
        assert_eq!(cl("3/2", "-3"), Region::III);
        assert_eq!(cl("5/2", "-3"), Region::IV);
        assert_eq!(cl("3", "-5/2"), Region::V);
        assert_eq!(cl("5/2", "-3/2"), Region::VI);
        assert_eq!(cl("5/2", "-1/2"), Region::VII);
        assert_eq!(cl("1/2", "-39/20"), Region::VIII);
        assert_eq!(cl("3/2", "-31/20"), Region::IX);
        assert_eq!(cl("-1", "1/4"), Region::IStar);
        assert_eq!(cl("1/2", "-1/5"), Region::IIStar);
        assert_eq!(cl("3/2", "-1/2"), Region::IIIStar);
        assert_eq!(cl("7/2", "-3/2"), Region::VStar);
        assert_eq!(cl("1/2", "-10/39"), Region::VIIIStar);
        assert_eq!(cl("3/2", "-30/31"), Region::IXStar);
    }

    #[test]
    fn unsupported_wedge_and_nonnegative() {
        assert_eq!(cl("5", "-6"), Region::Unsupported);
        assert_eq!(cl("6", "-7"), Region::Unsupported);
        assert_eq!(cl("10", "-11"), Region::Unsupported);
        assert_eq!(cl("5", "-5"), Region::Boundary);
        assert_eq!(cl("4", "-5"), Region::Boundary);
        assert_eq!(cl("1", "1"), Region::NonNegativeV);
        assert_eq!(cl("-1", "3"), Region::NonNegativeV);
        assert_eq!(cl("-2", "1"), Region::Boundary);
        assert_eq!(cl("-2", "1/2"), Region::IStar);
    }

    #[test]
    fn boundary_lines() {
        assert_eq!(cl("0", "-3"), Region::Boundary);
        assert_eq!(cl("1", "-3"), Region::Boundary);
        assert_eq!(cl("2", "-3"), Region::Boundary);
        assert_eq!(cl("3", "-7/2"), Region::Boundary);
        assert_eq!(cl("3", "-3"), Region::Boundary);
        assert_eq!(cl("5/2", "-2"), Region::Boundary);
        assert_eq!(cl("5/2", "-1"), Region::Boundary);
        assert_eq!(cl("5/2", "0"), Region::Boundary);
        assert_eq!(cl("32/27", "-3/2"), Region::Boundary);
        assert_eq!(cl("2", "-3/2"), Region::Boundary);
        assert_eq!(cl("3", "-3/2"), Region::Boundary);
        assert_eq!(cl("3", "-5/4"), Region::VStar);
        assert_eq!(cl("1/2", "-1/4"), Region::Boundary);
        // Exactly on the middle branch: v_plus(9/8) = -3/4.
        assert_eq!(cl("9/8", "-3/4"), Region::Boundary);
        // Inside the lens between the branches.
        assert_eq!(cl("1/2", "-9/10"), Region::Boundary);
        assert_eq!(cl("11/10", "-3/2"), Region::Boundary);
    }

    #[test]
    fn q_equals_one_meets_the_lens_strip() {
        // The line q = 1 is boundary for the big regions but interior to
        // the thin dual strip below -q/2.
        assert_eq!(cl("1", "-10/19"), Region::VIIIStar);
        assert_eq!(cl("1", "-15/8"), Region::VIII);
        assert_eq!(cl("1", "-1/4"), Region::Boundary);
    }

    #[test]
    fn diamond_brackets_at_one() {
        // v^3 - 2v - 1 = (v+1)(v^2 - v - 1): middle root (1-sqrt5)/2;
        // v^3 + 2v^2 - 1 = (v+1)(v^2 + v - 1): branch root -(1+sqrt5)/2.
        let width = rat(1, 1_000_000);
        let d = v_diamond(&Rat::one(), &width).unwrap();
        assert!(d.v_plus.width() <= width);
        assert!(d.v_minus.width() <= width);
        let golden_plus = UniPoly::from_ints(&[-1, -1, 1]);
        let golden_minus = UniPoly::from_ints(&[-1, 1, 1]);
        assert!(
            golden_plus.eval(&d.v_plus.lo) * golden_plus.eval(&d.v_plus.hi) < Rat::zero()
        );
        assert!(
            golden_minus.eval(&d.v_minus.lo) * golden_minus.eval(&d.v_minus.hi) < Rat::zero()
        );
    }

    #[test]
    fn diamond_domain_and_ranges() {
        for bad in ["0", "32/27", "-1", "2"] {
            assert!(matches!(
                v_diamond(&parse_rational(bad).unwrap(), &rat(1, 100)),
                Err(RegionError::OutOfDomain { .. })
            ));
        }
        for q in ["1/10", "1/2", "9/8", "63/54"] {
            let qq = parse_rational(q).unwrap();
            let d = v_diamond(&qq, &rat(1, 1000)).unwrap();
            assert!(d.v_plus.lo > rat(-8, 9) && d.v_plus.hi < Rat::zero(), "q={q}");
            assert!(d.v_minus.lo > rat_i(-2) && d.v_minus.hi < rat(-4, 3), "q={q}");
            // Product of the branches is q, up to bracket slack.
            let prod = d.v_plus.mid() * d.v_minus.mid();
            assert!((prod - qq).abs() < rat(1, 100), "q={q}");
        }
    }

    #[test]
    fn dual_points() {
        let p = |q: &str, v: &str| {
            let (a, b) =
                dual_point(&parse_rational(q).unwrap(), &parse_rational(v).unwrap()).unwrap();
            (a, b)
        };
        assert_eq!(p("-1", "1/4"), (rat_i(-1), rat_i(-4)));
        assert_eq!(cl("-1", "-4"), Region::I);
        assert_eq!(p("1/2", "-1/5"), (rat(1, 2), rat(-5, 2)));
        assert_eq!(cl("1/2", "-5/2"), Region::II);
        assert_eq!(p("7/2", "-3/2"), (rat(7, 2), rat(-7, 3)));
        assert_eq!(cl("7/2", "-7/3"), Region::V);
        assert_eq!(p("1/2", "-10/39"), (rat(1, 2), rat(-39, 20)));
        assert_eq!(cl("1/2", "-39/20"), Region::VIII);
        assert_eq!(p("3/2", "-30/31"), (rat(3, 2), rat(-31, 20)));
        assert_eq!(cl("3/2", "-31/20"), Region::IX);
        assert_eq!(
            dual_point(&Rat::one(), &Rat::zero()).unwrap_err(),
            RegionError::DivisionByZero
        );
    }

    #[test]
    fn certification_sample_points_classify_as_labelled() {
        let table: &[(Region, &[(&str, &str)])] = &[
            (Region::I, &[("-1", "-3"), ("-2", "-5/2"), ("-1/2", "-4"), ("-3", "-3"), ("-5/4", "-17/4")]),
            (Region::II, &[("1/2", "-3"), ("1/4", "-5/2"), ("3/4", "-7/2"), ("1/3", "-9/4"), ("2/3", "-4")]),
            (Region::III, &[("3/2", "-3"), ("5/4", "-5/2"), ("7/4", "-7/2"), ("4/3", "-9/4"), ("5/3", "-4")]),
            (Region::IV, &[("5/2", "-3"), ("7/2", "-4"), ("5/2", "-11/4"), ("7/2", "-15/4"), ("11/4", "-3")]),
            (Region::V, &[("3", "-5/2"), ("4", "-3"), ("5", "-7/2"), ("7/2", "-5/2"), ("6", "-4")]),
            (Region::VI, &[("5/2", "-3/2"), ("3", "-7/4"), ("7/2", "-15/8"), ("11/4", "-3/2"), ("10/3", "-9/5")]),
            (Region::VII, &[("5/2", "-1/2"), ("3", "-3/4"), ("4", "-1/2"), ("7/2", "-9/10"), ("10", "-1/5")]),
            (Region::VIII, &[("1/2", "-39/20"), ("1", "-15/8"), ("1/4", "-159/80"), ("3/4", "-9/5"), ("9/8", "-7/4")]),
            (Region::IX, &[("3/2", "-31/20"), ("3/2", "-7/5"), ("7/4", "-3/2"), ("13/10", "-8/5"), ("9/5", "-6/5")]),
            (Region::IStar, &[("-1", "1/4"), ("-2", "3/4"), ("-3", "1"), ("-1/2", "1/5"), ("-4", "3/2")]),
            (Region::IIStar, &[("1/2", "-1/5"), ("1/4", "-1/10"), ("3/4", "-1/4"), ("1/3", "-1/8"), ("2/3", "-3/10")]),
            (Region::IIIStar, &[("3/2", "-1/2"), ("5/4", "-2/5"), ("7/4", "-5/8"), ("4/3", "-1/2"), ("5/3", "-7/10")]),
            (Region::VStar, &[("7/2", "-3/2"), ("4", "-3/2"), ("3", "-5/4"), ("5", "-7/4"), ("7/2", "-8/5")]),
            (Region::VIIIStar, &[("1/2", "-10/39"), ("1", "-10/19"), ("1/4", "-20/159"), ("3/4", "-5/12"), ("9/8", "-9/14")]),
            (Region::IXStar, &[("3/2", "-30/31"), ("3/2", "-14/15"), ("7/4", "-9/10"), ("13/10", "-9/10"), ("9/5", "-19/20")]),
        ];
        for (want, pts) in table {
            for (q, v) in *pts {
                assert_eq!(cl(q, v), *want, "point ({q}, {v})");
            }
        }
    }

    #[test]
    fn classification_is_total_on_a_grid() {
        // Smoke: every grid point classifies without panicking, and the
        // region list stays within the declared variants.
        for i in 0..=36 {
            for j in 0..=40 {
                let q = rat(-12 + i, 4);
                let v = rat(-32 + j, 4);
                let _ = classify_region(&q, &v);
            }
        }
    }
}
