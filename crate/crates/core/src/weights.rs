//! Effective weights of gadget terms as exact rational functions of q,
//! and the four-type classification driving complementary pairs.

use crate::algebra::rat::Rat;
use crate::algebra::ratfn::RatFn;
use crate::algebra::roots::{cauchy_root_bound, isolate_real_roots};
use crate::graph::term::GadgetTerm;
use crate::tutte::split::{leaf_split, term_split_scalar};
use num_traits::{One, Zero};

/// The effective weight of a gadget: the weight a single edge must carry to
/// replace it without changing Z beyond a fixed prefactor. A function of q;
/// the edge weights are baked into the coefficients.
pub type EffectiveWeight = RatFn;

/// Sign class of 1 + v_F at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetType {
    APlus,
    AMinus,
    BPlus,
    BMinus,
    Boundary,
}

impl std::fmt::Display for GadgetType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GadgetType::APlus => "A+",
            GadgetType::AMinus => "A-",
            GadgetType::BPlus => "B+",
            GadgetType::BMinus => "B-",
            GadgetType::Boundary => "Boundary",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    /// A series composition whose denominator vanishes identically.
    IdenticallyDegenerate,
    /// Evaluation or classification at a pole of the weight.
    PoleAt(Rat),
    /// The operation requires terminals to be non-adjacent.
    NotTwoTerminalGraph,
}

impl std::fmt::Display for WeightError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightError::IdenticallyDegenerate => {
                write!(f, "series composition is identically degenerate")
            }
            WeightError::PoleAt(q) => write!(f, "effective weight has a pole at q = {q}"),
            WeightError::NotTwoTerminalGraph => {
                write!(f, "term does not realize a two-terminal graph")
            }
        }
    }
}

impl std::error::Error for WeightError {}

/// Effective weight of `t` as a function of q, by composition: parallel
/// parts multiply 1 + v_i, series parts multiply 1 + q/v_i, opaque leaves
/// contribute q z_same / z_diff of their split.
pub fn effective_weight(t: &GadgetTerm) -> Result<EffectiveWeight, WeightError> {
    match t {
        GadgetTerm::Edge(w) => Ok(RatFn::constant(w.clone())),
        GadgetTerm::Opaque(leaf) => Ok(leaf_split(leaf.kind, &leaf.weight).effective_weight()),
        GadgetTerm::Parallel(cs) => {
            let one = RatFn::one();
            let mut prod = RatFn::one();
            for c in cs {
                prod = &prod * &(&one + &effective_weight(c)?);
            }
            Ok(&prod - &one)
        }
        GadgetTerm::Series(cs) => {
            let one = RatFn::one();
            let q = RatFn::var();
            let mut prod = RatFn::one();
            for c in cs {
                let vi = effective_weight(c)?;
                if vi.is_zero() {
                    return Err(WeightError::IdenticallyDegenerate);
                }
                prod = &prod * &(&one + &(&q / &vi));
            }
            let den = &prod - &one;
            if den.is_zero() {
                return Err(WeightError::IdenticallyDegenerate);
            }
            Ok(&q / &den)
        }
    }
}

/// Effective weight value at a fixed q, through the scalar split
/// recurrences. This path has no spurious intermediate poles: it fails
/// only at q = 0 or where z_diff(q) = 0.
pub fn effective_weight_at(t: &GadgetTerm, q: &Rat) -> Result<Rat, WeightError> {
    if q.is_zero() {
        return Err(WeightError::PoleAt(q.clone()));
    }
    let sc = term_split_scalar(t, q);
    if sc.d.is_zero() {
        return Err(WeightError::PoleAt(q.clone()));
    }
    Ok(&(q * &sc.s) / &sc.d)
}

/// Classifies a weight value v by where 1 + v sits relative to -1, 0, 1.
pub fn classify_value(v: &Rat) -> GadgetType {
    let one_plus = &Rat::one() + v;
    let one = Rat::one();
    if one_plus > one {
        GadgetType::APlus
    } else if one_plus < -one.clone() {
        GadgetType::AMinus
    } else if one_plus > Rat::zero() && one_plus < one {
        GadgetType::BPlus
    } else if one_plus < Rat::zero() && one_plus > -one {
        GadgetType::BMinus
    } else {
        GadgetType::Boundary
    }
}

/// Classifies an effective weight at a given q; refuses poles.
pub fn classify_type(w: &EffectiveWeight, q: &Rat) -> Result<GadgetType, WeightError> {
    match w.eval(q) {
        None => Err(WeightError::PoleAt(q.clone())),
        Some(val) => Ok(classify_value(&val)),
    }
}

/// Two copies of `t` in parallel; 1 + v doubles as a square:
/// 1 + v_new = (1 + v_t)^2.
pub fn double_parallel(t: &GadgetTerm) -> GadgetTerm {
    GadgetTerm::parallel(vec![t.clone(), t.clone()])
}

/// Closed form for the s-fold uniform dipole: (1+v)^s - 1.
pub fn dipole_weight(s: usize, v: &Rat) -> Rat {
    let mut prod = Rat::one();
    let one_plus = &Rat::one() + v;
    for _ in 0..s {
        prod = &prod * &one_plus;
    }
    &prod - &Rat::one()
}

/// Closed form for the s-edge uniform path: q / ((1+q/v)^s - 1) as a
/// rational function of q. Needs v != 0 and s >= 1.
pub fn path_weight(s: usize, v: &Rat) -> Result<EffectiveWeight, WeightError> {
    if v.is_zero() {
        return Err(WeightError::IdenticallyDegenerate);
    }
    assert!(s >= 1);
    let one = RatFn::one();
    let q = RatFn::var();
    let base = &one + &(&q / &RatFn::constant(v.clone()));
    let den = &base.pow(s as u32) - &one;
    if den.is_zero() {
        return Err(WeightError::IdenticallyDegenerate);
    }
    Ok(&q / &den)
}

/// Summary of an effective weight for two-terminal terms: whether it
/// varies with q, and a rational threshold beyond which 1 + v_F(q) stays
/// positive (all roots and poles of 1 + v_F lie below it).
pub fn effective_weight_profile(t: &GadgetTerm) -> Result<(Rat, bool), WeightError> {
    if !t.is_two_terminal_graph() {
        return Err(WeightError::NotTwoTerminalGraph);
    }
    let w = effective_weight(t)?;
    let nonconstant = !(w.num().degree() <= Some(0) && w.den().degree() == Some(0));
    let one_plus_num = w.num() + w.den();
    let mut threshold = Rat::one();
    for p in [&one_plus_num, w.den()] {
        if p.degree() <= Some(0) {
            continue;
        }
        let bound = cauchy_root_bound(p);
        for b in isolate_real_roots(p, &-bound.clone(), &bound) {
            if b.hi >= threshold {
                threshold = &b.hi + &Rat::one();
            }
        }
    }
    Ok((threshold, nonconstant))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::UniPoly;
    use crate::algebra::rat::{rat, rat_i};
    use crate::graph::leaves::{complete_minus_edge, petersen_minus_edge};
    use crate::tutte::split::term_split;

    fn e(n: i64) -> GadgetTerm {
        GadgetTerm::edge(rat_i(n))
    }

    #[test]
    fn edge_and_dipole_weights() {
        let w = effective_weight(&e(-3)).unwrap();
        assert_eq!(w, RatFn::constant(rat_i(-3)));
        assert_eq!(classify_type(&w, &rat(7, 3)).unwrap(), GadgetType::AMinus);

        let d = GadgetTerm::parallel(vec![e(-3), e(-3)]);
        let wd = effective_weight(&d).unwrap();
        assert_eq!(wd, RatFn::constant(rat_i(3)));
        assert_eq!(classify_type(&wd, &rat_i(5)).unwrap(), GadgetType::APlus);
    }

    #[test]
    fn path_of_four_at_minus_one() {
        let p4 = GadgetTerm::series(vec![e(-3); 4]);
        let w = effective_weight(&p4).unwrap();
        assert_eq!(w.eval(&rat_i(-1)).unwrap(), rat(-81, 175));
        assert_eq!(classify_type(&w, &rat_i(-1)).unwrap(), GadgetType::BPlus);
        // Same value through the closed form and the scalar split path.
        let cf = path_weight(4, &rat_i(-3)).unwrap();
        assert_eq!(cf.eval(&rat_i(-1)).unwrap(), rat(-81, 175));
        assert_eq!(effective_weight_at(&p4, &rat_i(-1)).unwrap(), rat(-81, 175));
    }

    #[test]
    fn three_unit_negative_edges_in_series() {
        let j3 = GadgetTerm::series(vec![e(-1), e(-1), e(-1)]);
        let w = effective_weight(&j3).unwrap();
        assert_eq!(w.num(), &UniPoly::from_ints(&[-1]));
        assert_eq!(w.den(), &UniPoly::from_ints(&[3, -3, 1]));
    }

    #[test]
    fn k4_minus_edge_closed_form() {
        // At v = -1 the effective weight of K4 minus an edge reduces to
        // 2/(q-3).
        let k4 = complete_minus_edge(4, rat_i(-1)).unwrap();
        let w = effective_weight(&k4).unwrap();
        assert_eq!(w.num(), &UniPoly::from_ints(&[2]));
        assert_eq!(w.den(), &UniPoly::from_ints(&[-3, 1]));
    }

    #[test]
    fn composition_matches_raw_split() {
        let terms = vec![
            GadgetTerm::series(vec![e(-3), e(-3)]),
            GadgetTerm::parallel(vec![e(-2), GadgetTerm::series(vec![e(-2), e(-2)])]),
            GadgetTerm::series(vec![
                GadgetTerm::parallel(vec![e(-1), e(4)]),
                e(2),
                GadgetTerm::parallel(vec![e(-3), e(-3), e(5)]),
            ]),
            GadgetTerm::series(vec![complete_minus_edge(4, rat(-3, 2)).unwrap(), e(-2)]),
        ];
        for t in &terms {
            let composed = effective_weight(t).unwrap();
            let split = term_split(t).effective_weight();
            assert_eq!(composed, split, "term {t}");
            for q in [rat(5, 2), rat_i(-2)] {
                if let Ok(val) = effective_weight_at(t, &q) {
                    assert_eq!(Some(val), composed.eval(&q));
                }
            }
        }
    }

    #[test]
    fn double_parallel_behavior() {
        for (vf, expect) in [
            (rat_i(-3), rat_i(3)),
            (rat(-3, 2), rat(-3, 4)),
            (rat_i(-1), rat_i(-1)),
        ] {
            let t = GadgetTerm::edge(vf);
            let doubled = double_parallel(&t);
            let w = effective_weight(&doubled).unwrap();
            assert_eq!(w, RatFn::constant(expect));
        }
    }

    #[test]
    fn series_chain_identity() {
        // 1 + q/v_G = (1 + q/v_F)^s (1 + q/v) for the chain of s dipole
        // copies followed by one edge, as an identity of RatFns.
        let f = GadgetTerm::parallel(vec![e(-3), e(-3)]);
        let v_f = effective_weight(&f).unwrap();
        let v_e = RatFn::constant(rat_i(-3));
        let one = RatFn::one();
        let q = RatFn::var();
        for s in 1..=5usize {
            let mut parts = vec![f.clone(); s];
            parts.push(e(-3));
            let chain = GadgetTerm::series(parts);
            let v_g = effective_weight(&chain).unwrap();
            let lhs = &one + &(&q / &v_g);
            let rhs = &(&one + &(&q / &v_f)).pow(s as u32) * &(&one + &(&q / &v_e));
            assert_eq!(lhs, rhs, "s={s}");
        }
    }

    #[test]
    fn degenerate_series() {
        let t = GadgetTerm::series(vec![e(0), e(2)]);
        assert_eq!(effective_weight(&t).unwrap_err(), WeightError::IdenticallyDegenerate);
    }

    #[test]
    fn pole_rejection() {
        // Path of two -3 edges: weight 9/(q-6), pole at 6.
        let t = GadgetTerm::series(vec![e(-3), e(-3)]);
        let w = effective_weight(&t).unwrap();
        assert_eq!(classify_type(&w, &rat_i(6)).unwrap_err(), WeightError::PoleAt(rat_i(6)));
        assert_eq!(effective_weight_at(&t, &rat_i(6)).unwrap_err(), WeightError::PoleAt(rat_i(6)));
        assert_eq!(
            effective_weight_at(&t, &rat_i(0)).unwrap_err(),
            WeightError::PoleAt(rat_i(0))
        );
    }

    #[test]
    fn profile_threshold_and_nonconstancy() {
        let path = GadgetTerm::series(vec![e(-3), e(-3)]);
        let (thr, nonconstant) = effective_weight_profile(&path).unwrap();
        assert!(nonconstant);
        let w = effective_weight(&path).unwrap();
        for k in [1i64, 10, 100] {
            let q = &thr + &rat_i(k);
            let one_plus = &Rat::one() + &w.eval(&q).unwrap();
            assert!(one_plus > Rat::zero(), "k={k}");
        }

        let dipole = GadgetTerm::parallel(vec![e(-3), e(-3)]);
        assert_eq!(
            effective_weight_profile(&dipole).unwrap_err(),
            WeightError::NotTwoTerminalGraph
        );

        let petersen = petersen_minus_edge(rat_i(-3));
        let (pthr, pnc) = effective_weight_profile(&petersen).unwrap();
        assert!(pnc);
        let pw = effective_weight(&petersen).unwrap();
        for k in [1i64, 10, 100] {
            let q = &pthr + &rat_i(k);
            let one_plus = &Rat::one() + &pw.eval(&q).unwrap();
            assert!(one_plus > Rat::zero(), "k={k}");
        }
    }

    #[test]
    fn dipole_closed_form_values() {
        assert_eq!(dipole_weight(2, &rat_i(-3)), rat_i(3));
        assert_eq!(dipole_weight(3, &rat(-1, 2)), rat(-7, 8));
        let d5 = GadgetTerm::parallel(vec![e(-3); 5]);
        let w = effective_weight(&d5).unwrap();
        assert_eq!(w, RatFn::constant(dipole_weight(5, &rat_i(-3))));
    }
}
