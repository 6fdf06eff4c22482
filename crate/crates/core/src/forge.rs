//! Construction of complementary gadget pairs at a fixed rational point.
//!
//! Each region has a recipe built from paths, dipole chains, the Petersen
//! leaf, complete-graph leaves, or a bounded series-parallel closure
//! search. Every returned term is re-verified by exact evaluation before
//! it leaves this module.

use std::collections::HashSet;

use crate::algebra::rat::{rat_i, Rat};
use crate::graph::leaves::{
    complete_minus_edge_with_max, petersen_minus_edge, petersen_minus_edge_stretched,
};
use crate::graph::term::GadgetTerm;
use crate::regions::{classify_region, Region};
use crate::weights::{classify_value, double_parallel, effective_weight_at, GadgetType, WeightError};
use num_traits::{One, Zero};

/// Caps for the bounded searches. All fields must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_path_length: usize,
    pub max_sp_term_size: usize,
    pub max_kn: usize,
    pub max_parallel_mult: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_path_length: 64,
            max_sp_term_size: 12,
            max_kn: 7,
            max_parallel_mult: 8,
        }
    }
}

impl SearchBudget {
    fn validate(&self) {
        assert!(
            self.max_path_length > 0
                && self.max_sp_term_size > 0
                && self.max_kn > 0
                && self.max_parallel_mult > 0,
            "search budget fields must be positive"
        );
    }
}

const VALUE_CAP: usize = 50_000;
const COMBO_CAP: usize = 1_000_000;
const LADDER_ROUNDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForgeError {
    /// The point does not satisfy the preconditions of the requested
    /// construction.
    WrongCase { op: &'static str, q: Rat, v: Rat },
    SearchExhausted { stage: String },
    /// An exact check that should hold by theory failed; aborting loudly.
    AssertionFailure { detail: String },
    NotInteriorPoint { region: Region },
    /// A search was asked to find nothing.
    ImmediateExhaustion,
    Weight(WeightError),
}

impl std::fmt::Display for ForgeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ForgeError::WrongCase { op, q, v } => {
                write!(f, "{op}: point (q, v) = ({q}, {v}) matches no supported case")
            }
            ForgeError::SearchExhausted { stage } => write!(f, "search exhausted: {stage}"),
            ForgeError::AssertionFailure { detail } => write!(f, "exact check failed: {detail}"),
            ForgeError::NotInteriorPoint { region } => {
                write!(f, "point classifies as {region}, not an interior region")
            }
            ForgeError::ImmediateExhaustion => write!(f, "empty target set"),
            ForgeError::Weight(e) => write!(f, "weight evaluation failed: {e}"),
        }
    }
}

impl std::error::Error for ForgeError {}

impl From<WeightError> for ForgeError {
    fn from(e: WeightError) -> Self {
        ForgeError::Weight(e)
    }
}

/// A complementary pair of gadget terms valid at one rational point:
/// the types are (A+, B-) or (A-, B+) and at most one term is a dipole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementaryPair {
    pub a: GadgetTerm,
    pub b: GadgetTerm,
    pub a_type: GadgetType,
    pub b_type: GadgetType,
    pub planar: bool,
}

/// Effective weight of a parallel join, in terms of the joined weights.
pub fn parallel_value(v1: &Rat, v2: &Rat) -> Rat {
    let one = Rat::one();
    &(&(&one + v1) * &(&one + v2)) - &one
}

/// Effective weight of a series join, or None when the join is
/// degenerate (the denominator v1 + v2 + q vanishes identically there).
pub fn series_value(q: &Rat, v1: &Rat, v2: &Rat) -> Option<Rat> {
    let den = &(v1 + v2) + q;
    if den.is_zero() {
        return None;
    }
    Some(&(v1 * v2) / &den)
}

/// Exact type check used to verify every constructed term.
fn verified_type(t: &GadgetTerm, q: &Rat) -> Result<GadgetType, ForgeError> {
    Ok(classify_value(&effective_weight_at(t, q)?))
}

fn expect_type(t: &GadgetTerm, q: &Rat, want: GadgetType, what: &str) -> Result<(), ForgeError> {
    let got = verified_type(t, q)?;
    if got == want {
        Ok(())
    } else {
        Err(ForgeError::AssertionFailure {
            detail: format!("{what}: expected type {want}, verified {got}"),
        })
    }
}

/// Builds the pair struct, enforcing the complementarity invariants.
fn pair_from_terms(a: GadgetTerm, b: GadgetTerm, q: &Rat) -> Result<ComplementaryPair, ForgeError> {
    let a_type = verified_type(&a, q)?;
    let b_type = verified_type(&b, q)?;
    let complementary = matches!(
        (a_type, b_type),
        (GadgetType::APlus, GadgetType::BMinus) | (GadgetType::AMinus, GadgetType::BPlus)
    );
    if !complementary {
        return Err(ForgeError::AssertionFailure {
            detail: format!("pair types ({a_type}, {b_type}) are not complementary"),
        });
    }
    if a.is_dipole() && b.is_dipole() {
        return Err(ForgeError::AssertionFailure {
            detail: "both pair members are dipoles".to_string(),
        });
    }
    let planar = a.is_planar() && b.is_planar();
    Ok(ComplementaryPair { a, b, a_type, b_type, planar })
}

/// Scans series chains of copies of `base` (effective weight `w`) for the
/// first length whose weight has the target type. The five supported
/// cases restrict which (q, w, target) combinations are meaningful.
fn path_gadget_over(
    base: &GadgetTerm,
    w: &Rat,
    q: &Rat,
    target: GadgetType,
    budget: &SearchBudget,
) -> Result<GadgetTerm, ForgeError> {
    budget.validate();
    let zero = Rat::zero();
    let one = Rat::one();
    let two = rat_i(2);
    let m2 = rat_i(-2);
    let neg2w = -(&two * w);
    let wrong = || ForgeError::WrongCase { op: "path_gadget", q: q.clone(), v: w.clone() };
    let even_only = match target {
        GadgetType::BPlus => {
            let case_neg_q = w < &zero && q < &zero;
            let case_small_q = w < &m2 && q > &zero && q < &one;
            if !(case_neg_q || case_small_q) {
                return Err(wrong());
            }
            false
        }
        GadgetType::BMinus => {
            if !(w < &m2 && q > &one && q < &two) {
                return Err(wrong());
            }
            false
        }
        GadgetType::APlus => {
            if !(w < &zero && q > &neg2w) {
                return Err(wrong());
            }
            // Here 1 + q/w < -1, so odd powers can never give a positive
            // weight; only even chain lengths are candidates.
            true
        }
        GadgetType::AMinus => {
            if !(w < &zero && q > &two && q < &neg2w) {
                return Err(wrong());
            }
            false
        }
        GadgetType::Boundary => return Err(wrong()),
    };
    let r = &one + &(q / w);
    let mut x = r.clone();
    for s in 2..=budget.max_path_length {
        x = &x * &r;
        if even_only && s % 2 == 1 {
            continue;
        }
        if x == one {
            continue;
        }
        let v_s = q / &(&x - &one);
        if classify_value(&v_s) == target {
            let term = GadgetTerm::series_copies(base, s);
            let direct = effective_weight_at(&term, q)?;
            if direct != v_s {
                return Err(ForgeError::AssertionFailure {
                    detail: format!("chain weight mismatch: {direct} vs {v_s}"),
                });
            }
            return Ok(term);
        }
    }
    Err(ForgeError::SearchExhausted {
        stage: format!("path_gadget for {target} up to length {}", budget.max_path_length),
    })
}

/// Series chains of s copies of base, scanned for the first type match.
pub fn path_gadget(
    q: &Rat,
    v: &Rat,
    target: GadgetType,
    budget: &SearchBudget,
) -> Result<GadgetTerm, ForgeError> {
    path_gadget_over(&GadgetTerm::edge(v.clone()), v, q, target, budget)
}

/// Series chain of s doubled copies of `base` followed by one more copy,
/// scanned for the minimal s giving a weight in (-1, 0). Requires
/// q > 2 and -q < w < -2, which make the doubled weight exceed zero and
/// drive the chain weight monotonically toward the target band.
fn chain_to_bplus(
    base: &GadgetTerm,
    w: &Rat,
    q: &Rat,
    budget: &SearchBudget,
) -> Result<GadgetTerm, ForgeError> {
    let one = Rat::one();
    let w_d = parallel_value(w, w);
    if w_d <= Rat::zero() {
        return Err(ForgeError::AssertionFailure {
            detail: format!("doubled weight {w_d} not positive"),
        });
    }
    let doubled = double_parallel(base);
    let ratio = &one + &(q / &w_d);
    let tail = &one + &(q / w);
    let mut x = tail.clone();
    for s in 1..=budget.max_path_length {
        x = &x * &ratio;
        let v_g = q / &(&x - &one);
        if classify_value(&v_g) == GadgetType::BPlus {
            let mut parts = vec![doubled.clone(); s];
            parts.push(base.clone());
            let term = GadgetTerm::series(parts);
            let direct = effective_weight_at(&term, q)?;
            if direct != v_g {
                return Err(ForgeError::AssertionFailure {
                    detail: format!("dipole chain weight mismatch: {direct} vs {v_g}"),
                });
            }
            return Ok(term);
        }
    }
    Err(ForgeError::SearchExhausted {
        stage: format!("dipole chain up to {} sections", budget.max_path_length),
    })
}

/// For q > 2 and -q < v < -2: a series chain of doubled edges plus one
/// edge whose weight lands in (-1, 0).
pub fn series_dipole_bplus(
    q: &Rat,
    v: &Rat,
    budget: &SearchBudget,
) -> Result<GadgetTerm, ForgeError> {
    budget.validate();
    if !(q > &rat_i(2) && v < &rat_i(-2) && v > &-q.clone()) {
        return Err(ForgeError::WrongCase {
            op: "series_dipole_bplus",
            q: q.clone(),
            v: v.clone(),
        });
    }
    let term = chain_to_bplus(&GadgetTerm::edge(v.clone()), v, q, budget)?;
    expect_type(&term, q, GadgetType::BPlus, "series_dipole_bplus")?;
    Ok(term)
}

/// The four-way dispatch on a Petersen leaf's exact weight; None when the
/// weight falls outside the handled set (-q, 0) plus the -1 and -2 spots.
fn petersen_case_analysis(
    f: GadgetTerm,
    w_f: &Rat,
    q: &Rat,
    budget: &SearchBudget,
) -> Result<Option<GadgetTerm>, ForgeError> {
    let m1 = rat_i(-1);
    let m2 = rat_i(-2);
    let neg_q = -q.clone();
    let two = rat_i(2);
    if *w_f > m1 && *w_f < Rat::zero() {
        return Ok(Some(f));
    }
    if *w_f > neg_q && *w_f < m2 {
        return Ok(Some(chain_to_bplus(&f, w_f, q, budget)?));
    }
    if *w_f > m2 && *w_f < m1 {
        return Ok(Some(double_parallel(&f)));
    }
    if *w_f == m1 {
        return Ok(Some(GadgetTerm::series_copies(&f, 3)));
    }
    if *w_f == m2 {
        // Base ratio 1 - q/2 is in (-1, 0) here, so odd chains keep the
        // weight in (-q, -2) and the dipole chain applies to them.
        let ratio = &Rat::one() - &(q / &two);
        let mut found = None;
        let mut s = 3usize;
        while s <= budget.max_path_length {
            let x = crate::algebra::rat::pow_u(&ratio, s as u32);
            let v_j = q / &(&x - &Rat::one());
            if v_j > neg_q && v_j < m2 {
                found = Some((s, v_j));
                break;
            }
            s += 2;
        }
        let (s, v_j) = found.ok_or_else(|| ForgeError::SearchExhausted {
            stage: "odd series chain on the Petersen leaf".to_string(),
        })?;
        let j = GadgetTerm::series_copies(&f, s);
        return Ok(Some(chain_to_bplus(&j, &v_j, q, budget)?));
    }
    Ok(None)
}

/// For non-integer 2 < q < 4 and v < -q: a term of type B+ built from
/// the Petersen leaf, with the case analysis keyed on the leaf's exact
/// effective weight at (q, v).
///
/// The plain leaf's weight only falls in the handled band when v sits
/// near -q. Further out the leaf is stretched: subdividing every template
/// edge into an m-path replaces the per-edge weight by the m-path weight,
/// which climbs toward -q as m grows, and the case analysis reapplies to
/// the first stretched leaf whose weight lands in the band.
pub fn petersen_bplus(q: &Rat, v: &Rat, budget: &SearchBudget) -> Result<GadgetTerm, ForgeError> {
    budget.validate();
    let two = rat_i(2);
    let four = rat_i(4);
    if !(q > &two && q < &four && *q != rat_i(3) && v < &-q.clone()) {
        return Err(ForgeError::WrongCase { op: "petersen_bplus", q: q.clone(), v: v.clone() });
    }
    let f = petersen_minus_edge(v.clone());
    let w_f = effective_weight_at(&f, q)?;
    if let Some(out) = petersen_case_analysis(f, &w_f, q, budget)? {
        expect_type(&out, q, GadgetType::BPlus, "petersen_bplus")?;
        return Ok(out);
    }
    let max_stretch = budget
        .max_path_length
        .min(crate::graph::leaves::MAX_PETERSEN_STRETCH);
    for m in 2..=max_stretch {
        let Ok(leaf) = petersen_minus_edge_stretched(m, v.clone()) else {
            break;
        };
        let Ok(w_m) = effective_weight_at(&leaf, q) else {
            continue;
        };
        if let Some(out) = petersen_case_analysis(leaf, &w_m, q, budget)? {
            expect_type(&out, q, GadgetType::BPlus, "petersen_bplus")?;
            return Ok(out);
        }
    }
    Err(ForgeError::AssertionFailure {
        detail: format!(
            "Petersen leaf weight {w_f} escapes (-q, 0) at q = {q}, v = {v} and stretching to {max_stretch} never re-enters"
        ),
    })
}

/// Breadth-first closure of seeds and the single edge under binary
/// series and parallel joins, tracking exact effective weights at the
/// fixed point. Terms are explored in order of size, then serialized
/// form; weights already seen are not re-expanded. Returns the first
/// term whose type is in `targets`, skipping terms whose terminals are
/// adjacent when `require_two_terminal` is set.
pub fn sp_search(
    q: &Rat,
    v: &Rat,
    targets: &[GadgetType],
    seeds: &[GadgetTerm],
    require_two_terminal: bool,
    budget: &SearchBudget,
) -> Result<GadgetTerm, ForgeError> {
    budget.validate();
    assert!(!q.is_zero(), "searches run at nonzero q");
    if targets.is_empty() {
        return Err(ForgeError::ImmediateExhaustion);
    }
    let accepts = |t: &GadgetTerm, val: &Rat| {
        targets.contains(&classify_value(val)) && (!require_two_terminal || t.is_two_terminal_graph())
    };
    let max = budget.max_sp_term_size;
    let mut by_size: Vec<Vec<(GadgetTerm, Rat)>> = vec![Vec::new(); max + 1];
    let mut seen: HashSet<Rat> = HashSet::new();

    let mut initial: Vec<GadgetTerm> = Vec::with_capacity(seeds.len() + 1);
    initial.push(GadgetTerm::edge(v.clone()));
    initial.extend(seeds.iter().cloned());
    initial.sort_by_cached_key(|t| (t.size(), t.to_string()));
    for t in initial {
        let size = t.size();
        if size > max {
            continue;
        }
        let val = match effective_weight_at(&t, q) {
            Ok(val) => val,
            Err(_) => continue,
        };
        if !seen.insert(val.clone()) {
            continue;
        }
        if accepts(&t, &val) {
            return Ok(t);
        }
        by_size[size].push((t, val));
    }

    let mut combos = 0usize;
    for n in 2..=max {
        let mut candidates: Vec<(GadgetTerm, Rat)> = Vec::new();
        for i in 1..=n / 2 {
            let j = n - i;
            for (idx1, (t1, v1)) in by_size[i].iter().enumerate() {
                let start = if i == j { idx1 } else { 0 };
                for (t2, v2) in by_size[j][start..].iter() {
                    combos += 1;
                    if combos > COMBO_CAP {
                        return Err(ForgeError::SearchExhausted {
                            stage: format!("combination cap {COMBO_CAP}"),
                        });
                    }
                    if let Some(val) = series_value(q, v1, v2) {
                        if !seen.contains(&val) {
                            let term =
                                GadgetTerm::series(vec![t1.clone(), t2.clone()]);
                            candidates.push((term, val));
                        }
                    }
                    let val = parallel_value(v1, v2);
                    if !seen.contains(&val) {
                        let term = GadgetTerm::parallel(vec![t1.clone(), t2.clone()]);
                        candidates.push((term, val));
                    }
                }
            }
        }
        candidates.sort_by_cached_key(|(t, _)| t.to_string());
        for (t, val) in candidates {
            if !seen.insert(val.clone()) {
                continue;
            }
            if seen.len() > VALUE_CAP {
                return Err(ForgeError::SearchExhausted {
                    stage: format!("value cap {VALUE_CAP}"),
                });
            }
            if accepts(&t, &val) {
                return Ok(t);
            }
            by_size[n].push((t, val));
        }
    }
    Err(ForgeError::SearchExhausted {
        stage: format!("series-parallel closure up to size {max}"),
    })
}

/// For q > 2 and -1 < v < 0: searches the closure of complete-graph
/// leaves for a term of type A- or B-. Exhaustion is a legitimate,
/// reported outcome here.
pub fn kn_gadget_search(q: &Rat, v: &Rat, budget: &SearchBudget) -> Result<GadgetTerm, ForgeError> {
    budget.validate();
    if !(q > &rat_i(2) && v > &rat_i(-1) && v < &Rat::zero()) {
        return Err(ForgeError::WrongCase { op: "kn_gadget_search", q: q.clone(), v: v.clone() });
    }
    let mut seeds = Vec::new();
    for n in 4..=budget.max_kn {
        let leaf = complete_minus_edge_with_max(n, v.clone(), budget.max_kn)
            .expect("leaf within its own budget");
        seeds.push(leaf);
    }
    // When every seed weight sits strictly above -1, so does the whole
    // closure: parallel keeps 1 + w positive, and with q > 2 a series
    // combination has 1 + w = ((1+w1)(1+w2) + (q-1)) / (w1 + w2 + q) with
    // every factor positive. The targets all lie below -1, so the search
    // can report exhaustion without enumerating.
    let mut all_above = v > &rat_i(-1);
    for leaf in &seeds {
        match effective_weight_at(leaf, q) {
            Ok(w) => {
                if w <= rat_i(-1) {
                    all_above = false;
                    break;
                }
            }
            Err(_) => continue,
        }
    }
    if all_above {
        return Err(ForgeError::SearchExhausted {
            stage: "every seed weight exceeds -1, so the closure never reaches the targets"
                .to_string(),
        });
    }
    sp_search(
        q,
        v,
        &[GadgetType::AMinus, GadgetType::BMinus],
        &seeds,
        true,
        budget,
    )
}

/// Dispatches the per-region recipe and returns a verified pair.
pub fn complementary_pair(
    q: &Rat,
    v: &Rat,
    budget: &SearchBudget,
) -> Result<ComplementaryPair, ForgeError> {
    budget.validate();
    let region = classify_region(q, v);
    let edge = || GadgetTerm::edge(v.clone());
    match region {
        Region::I | Region::II => {
            let b = path_gadget(q, v, GadgetType::BPlus, budget)?;
            pair_from_terms(edge(), b, q)
        }
        Region::III => {
            let b = path_gadget(q, v, GadgetType::BMinus, budget)?;
            pair_from_terms(double_parallel(&edge()), b, q)
        }
        Region::IV => {
            let b = petersen_bplus(q, v, budget)?;
            pair_from_terms(edge(), b, q)
        }
        Region::V => {
            let b = series_dipole_bplus(q, v, budget)?;
            pair_from_terms(edge(), b, q)
        }
        Region::VI => {
            let p = path_gadget(q, v, GadgetType::AMinus, budget)?;
            pair_from_terms(double_parallel(&p), edge(), q)
        }
        Region::VII => {
            let f = kn_gadget_search(q, v, budget)?;
            let w_f = effective_weight_at(&f, q)?;
            match classify_value(&w_f) {
                GadgetType::AMinus => pair_from_terms(f, edge(), q),
                GadgetType::BMinus => {
                    // w_f is in (-2, -1); decide which chain strategy the
                    // point (q, w_f) supports.
                    let neg2w = -(&rat_i(2) * &w_f);
                    if q < &neg2w {
                        let p = path_gadget_over(&f, &w_f, q, GadgetType::AMinus, budget)?;
                        pair_from_terms(double_parallel(&p), f, q)
                    } else if q > &neg2w {
                        let p = path_gadget_over(&f, &w_f, q, GadgetType::APlus, budget)?;
                        pair_from_terms(p, f, q)
                    } else {
                        Err(ForgeError::SearchExhausted {
                            stage: format!("found weight {w_f} sits exactly on q = -2w"),
                        })
                    }
                }
                other => Err(ForgeError::AssertionFailure {
                    detail: format!("complete-graph search returned type {other}"),
                }),
            }
        }
        Region::VIII => {
            let h = GadgetTerm::parallel(vec![edge(), edge()]);
            let a = sp_search(q, v, &[GadgetType::APlus], &[h], true, budget)?;
            pair_from_terms(a, edge(), q)
        }
        Region::IX => {
            let a = sp_search(q, v, &[GadgetType::APlus], &[], true, budget)?;
            pair_from_terms(a, edge(), q)
        }
        other => Err(ForgeError::NotInteriorPoint { region: other }),
    }
}

/// Pair construction on the v = -1 line, where every dipole degenerates
/// and the generic dispatch does not apply. Tries a doubling ladder for
/// the a-side, then closure searches over the complete-graph leaves for
/// both pairings. Defined for q > 32/27; below that the line sits inside
/// the zero-free band.
pub fn chromatic_line_pair(q: &Rat, budget: &SearchBudget) -> Result<ComplementaryPair, ForgeError> {
    budget.validate();
    let m1 = rat_i(-1);
    if *q <= crate::algebra::rat::rat(32, 27) {
        return Err(ForgeError::NotInteriorPoint { region: classify_region(q, &m1) });
    }
    let seeds = [
        complete_minus_edge_with_max(4, m1.clone(), budget.max_kn.max(4))
            .expect("4 within budget"),
        complete_minus_edge_with_max(5, m1.clone(), budget.max_kn.max(5))
            .expect("5 within budget"),
    ];
    // Doubling ladder. Alternate series-doubling with parallel-doubling;
    // each pass moves the weight further from the degenerate value -1, and
    // for q below 2 the iterates eventually leave the band (-2, 0). The
    // first iterate landing in an A class becomes the a-side. The ladder
    // stalls at some q (the weight can lock onto a fixed point), so the
    // closure searches below remain as the fallback.
    let mut t = GadgetTerm::edge(m1.clone());
    'ladder: for _ in 0..LADDER_ROUNDS {
        for series_step in [true, false] {
            t = if series_step {
                GadgetTerm::series(vec![t.clone(), t])
            } else {
                GadgetTerm::parallel(vec![t.clone(), t])
            };
            let Ok(w) = effective_weight_at(&t, q) else {
                break 'ladder;
            };
            match classify_value(&w) {
                GadgetType::AMinus => {
                    let b = sp_search(q, &m1, &[GadgetType::BPlus], &seeds, true, budget)?;
                    return pair_from_terms(t, b, q);
                }
                GadgetType::APlus => {
                    let b = sp_search(q, &m1, &[GadgetType::BMinus], &seeds, true, budget)?;
                    return pair_from_terms(t, b, q);
                }
                _ => {}
            }
        }
    }
    let first = (|| -> Result<ComplementaryPair, ForgeError> {
        let a = sp_search(q, &m1, &[GadgetType::AMinus], &seeds, true, budget)?;
        let b = sp_search(q, &m1, &[GadgetType::BPlus], &seeds, true, budget)?;
        pair_from_terms(a, b, q)
    })();
    if first.is_ok() {
        return first;
    }
    let a = sp_search(q, &m1, &[GadgetType::APlus], &seeds, true, budget)?;
    let b = sp_search(q, &m1, &[GadgetType::BMinus], &seeds, true, budget)?;
    pair_from_terms(a, b, q)
}
