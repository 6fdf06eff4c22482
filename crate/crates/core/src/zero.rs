//! From a target point and radius to a checkable zero certificate.
//!
//! The entry point is [`find_zero`]: it builds a complementary pair at a
//! working point near the target, searches for exponents (s, t) whose
//! parallel gluing has a sign change in q, and narrows the sign change to
//! a bracket of width at most eps/8. The resulting [`ZeroCertificate`]
//! pins down an explicit graph, an exact bracket with opposite signs of
//! its partition function at the endpoints, and the sign data for every
//! prefactor, so that [`verify_certificate`] can recheck everything from
//! scratch.

use crate::algebra::poly::UniPoly;
use crate::algebra::rat::{ln_approx, pow_u, rat_i, sign, Rat};
use crate::algebra::ratfn::RatFn;
use crate::algebra::roots::{count_roots_closed, count_roots_open, Bracket};
use crate::forge::{
    chromatic_line_pair, complementary_pair, ComplementaryPair, ForgeError, SearchBudget,
};
use crate::graph::multigraph::MultiGraph;
use crate::graph::term::GadgetTerm;
use crate::regions::{classify_region, Region};
use crate::tutte::duality::verify_planar_duality;
use crate::tutte::delcon::z_del_con;
use crate::tutte::split::{term_split, term_split_scalar};
use crate::tutte::subset::z_poly_q_with_budget;
use crate::weights::{classify_value, effective_weight, effective_weight_at, GadgetType, WeightError};
use num_traits::{One, Signed, Zero};

/// Cap on s + t in the exponent search.
pub const EXPONENT_CAP: usize = 10_000;

/// Witness graphs with at most this many edges are rechecked against an
/// independent oracle under exhaustive verification.
pub const EXHAUSTIVE_EDGE_CAP: usize = 24;

/// Up to this many edges the recheck uses the 2^m subset expansion;
/// larger witnesses go through the memoized deletion-contraction
/// recursion, whose cost does not scale with 2^m.
const SUBSET_EDGE_CAP: usize = 14;

/// Parity constraint on a searched exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl Parity {
    pub fn admits(self, n: usize) -> bool {
        match self {
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 == 1,
            Parity::Any => true,
        }
    }
}

/// Exponents (s, t) together with a bracket on which a^s b^t - c changes
/// sign strictly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentWitness {
    pub s: usize,
    pub t: usize,
    pub bracket: Bracket,
}

/// Endpoint signs of one factor of the witness prefactor. The factor
/// labels are "q", "A" (z_diff of the a-term), "B" (z_diff of the b-term).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefactorSign {
    pub factor: String,
    pub sign_lo: i32,
    pub sign_hi: i32,
}

/// The point and radius the caller asked for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroTarget {
    pub q0: Rat,
    pub v0: Rat,
    pub eps: Rat,
}

/// A self-contained, recheckable witness that the partition function of an
/// explicit graph vanishes at some q strictly inside `bracket`, with every
/// edge carrying weight `v0`.
///
/// The witness graph is the parallel gluing of `s` copies of `a_term` and
/// `t` copies of `b_term` across a shared terminal pair. Its partition
/// function factors as q^(1-2(s+t)) D_A^s D_B^t f with
/// f = q - 1 + (1 + v_A)^s (1 + v_B)^t, and the certificate stores the
/// endpoint signs of every factor: the prefactors are nonvanishing on the
/// bracket while f changes sign strictly, so Z itself changes sign.
///
/// When `dual` is set, the sign change was established at the primal point
/// and transfers through planar duality to the dualized witness read at
/// (q, q/v); `dual_a_term` and `dual_b_term` hold the dualized gadgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCertificate {
    pub a_term: GadgetTerm,
    pub b_term: GadgetTerm,
    pub s: usize,
    pub t: usize,
    pub v0: Rat,
    pub bracket: Bracket,
    pub sign_lo: i32,
    pub sign_hi: i32,
    pub prefactor_witness: Vec<PrefactorSign>,
    pub dual: bool,
    pub dual_a_term: Option<GadgetTerm>,
    pub dual_b_term: Option<GadgetTerm>,
    pub target: ZeroTarget,
    pub working_point: (Rat, Rat),
    pub achieved_distance: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FindZeroError {
    /// The target sits in the quadrant with no construction, or deeper
    /// than eps/2 inside a boundary or non-negative set.
    UnsupportedRegion { q0: Rat, v0: Rat, detail: String },
    /// No window around the working point keeps every constraint
    /// polynomial away from zero.
    PoleWindowEmpty,
    /// `find_zero_dual` was called off the starred regions.
    NotStarredRegion { region: Region },
    /// The primal pair contains a non-planar gadget, so no dual
    /// certificate can be formed.
    NonPlanarPair,
    /// An ordering precondition of the exponent search fails on the
    /// window.
    PreconditionViolated { detail: String },
    /// Both ratio functions are constant in q, so no exponent choice can
    /// move the crossing.
    DegenerateRatio,
    /// The exponent search ran out of budget.
    SearchExhausted { stage: String },
    /// Pair construction failed; carries the underlying reason.
    Gadget(ForgeError),
    Weight(WeightError),
}

impl std::fmt::Display for FindZeroError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FindZeroError::UnsupportedRegion { q0, v0, detail } => {
                write!(f, "unsupported target ({q0}, {v0}): {detail}")
            }
            FindZeroError::PoleWindowEmpty => {
                write!(f, "no sign-stable pole-free window around the working point")
            }
            FindZeroError::NotStarredRegion { region } => {
                write!(
                    f,
                    "dual construction requires a starred region, point classifies as {region}"
                )
            }
            FindZeroError::NonPlanarPair => {
                write!(f, "primal pair is not planar, no dual certificate exists")
            }
            FindZeroError::PreconditionViolated { detail } => {
                write!(f, "exponent search precondition violated: {detail}")
            }
            FindZeroError::DegenerateRatio => {
                write!(f, "both ratio functions are constant in q")
            }
            FindZeroError::SearchExhausted { stage } => write!(f, "search exhausted: {stage}"),
            FindZeroError::Gadget(e) => write!(f, "pair construction failed: {e}"),
            FindZeroError::Weight(e) => write!(f, "weight evaluation failed: {e}"),
        }
    }
}

impl std::error::Error for FindZeroError {}

impl From<ForgeError> for FindZeroError {
    fn from(e: ForgeError) -> Self {
        FindZeroError::Gadget(e)
    }
}

impl From<WeightError> for FindZeroError {
    fn from(e: WeightError) -> Self {
        FindZeroError::Weight(e)
    }
}

fn internal(detail: String) -> FindZeroError {
    FindZeroError::Gadget(ForgeError::AssertionFailure { detail })
}

fn precondition(detail: &str) -> FindZeroError {
    FindZeroError::PreconditionViolated { detail: detail.to_string() }
}

fn is_constant(f: &RatFn) -> bool {
    f.num().degree().unwrap_or(0) == 0 && f.den().degree().unwrap_or(0) == 0
}

/// Number of grid points in the sign sampler.
const GRID: usize = 257;

/// Exact values and approximate logarithms of a, b, c on the sample grid.
/// The preconditions guarantee a > 1, 0 < b < 1, c > 0 on the whole
/// window, so every logarithm is defined.
struct SampleTable {
    xs: Vec<Rat>,
    av: Vec<Rat>,
    bv: Vec<Rat>,
    cv: Vec<Rat>,
    la: Vec<f64>,
    lb: Vec<f64>,
    lc: Vec<f64>,
}

impl SampleTable {
    fn build(a: &RatFn, b: &RatFn, c: &RatFn, lo: &Rat, hi: &Rat) -> SampleTable {
        let step = &(hi - lo) / &rat_i((GRID - 1) as i64);
        let mut t = SampleTable {
            xs: Vec::with_capacity(GRID),
            av: Vec::with_capacity(GRID),
            bv: Vec::with_capacity(GRID),
            cv: Vec::with_capacity(GRID),
            la: Vec::with_capacity(GRID),
            lb: Vec::with_capacity(GRID),
            lc: Vec::with_capacity(GRID),
        };
        for i in 0..GRID {
            let x = lo + &(&step * &rat_i(i as i64));
            let a_x = a.eval(&x).expect("window is pole-free for a");
            let b_x = b.eval(&x).expect("window is pole-free for b");
            let c_x = c.eval(&x).expect("window is pole-free for c");
            t.la.push(ln_approx(&a_x));
            t.lb.push(ln_approx(&b_x));
            t.lc.push(ln_approx(&c_x));
            t.xs.push(x);
            t.av.push(a_x);
            t.bv.push(b_x);
            t.cv.push(c_x);
        }
        t
    }

    fn h_exact(&self, i: usize, s: u32, t: u32) -> Rat {
        &(&pow_u(&self.av[i], s) * &pow_u(&self.bv[i], t)) - &self.cv[i]
    }
}

/// One (s, t) candidate scan over the grid. Floating logarithms flag the
/// subintervals worth checking; every accepted sign is recomputed exactly.
struct CandidateScan<'a> {
    table: &'a SampleTable,
    s: u32,
    t: u32,
    memo: Vec<Option<i32>>,
}

impl<'a> CandidateScan<'a> {
    fn new(table: &'a SampleTable, s: u32, t: u32) -> Self {
        CandidateScan { table, s, t, memo: vec![None; GRID] }
    }

    fn exact_sign(&mut self, i: usize) -> i32 {
        if let Some(sg) = self.memo[i] {
            return sg;
        }
        let sg = sign(&self.table.h_exact(i, self.s, self.t));
        self.memo[i] = Some(sg);
        sg
    }

    /// Grid indices (i, j), i < j, with strict opposite exact signs of h.
    fn find_bracket(&mut self) -> Option<(usize, usize)> {
        let s = self.s as f64;
        let t = self.t as f64;
        // Relative error in g stays far below this threshold for
        // s + t <= 10^4, so a pair with both |g| above it and equal signs
        // is safe to skip without an exact check.
        const TOL: f64 = 1e-7;
        let g = |i: usize| s * self.table.la[i] + t * self.table.lb[i] - self.table.lc[i];
        for i in 0..GRID - 1 {
            let gi = g(i);
            let gj = g(i + 1);
            let flagged =
                (gi <= 0.0) != (gj <= 0.0) || gi.abs() < TOL || gj.abs() < TOL;
            if !flagged {
                continue;
            }
            let si = self.exact_sign(i);
            let sj = self.exact_sign(i + 1);
            if si * sj == -1 {
                return Some((i, i + 1));
            }
            // A sample landing exactly on a root: bracket across it with
            // the flanking samples.
            if si == 0 && sj != 0 && i > 0 && self.exact_sign(i - 1) * sj == -1 {
                return Some((i - 1, i + 1));
            }
            if sj == 0 && si != 0 && i + 2 < GRID && si * self.exact_sign(i + 2) == -1 {
                return Some((i, i + 2));
            }
        }
        None
    }
}

/// Tightens a strict sign-change bracket of h = a^s b^t - c by bisection.
/// Stops early if a midpoint lands exactly on a root; the bracket kept so
/// far is still strict.
fn refine_h_bracket(
    a: &RatFn,
    b: &RatFn,
    c: &RatFn,
    s: u32,
    t: u32,
    mut lo: Rat,
    mut hi: Rat,
    s_lo: i32,
) -> Bracket {
    let h_at = |x: &Rat| -> Option<Rat> {
        let (av, bv, cv) = (a.eval(x)?, b.eval(x)?, c.eval(x)?);
        Some(&(&pow_u(&av, s) * &pow_u(&bv, t)) - &cv)
    };
    let two = rat_i(2);
    for _ in 0..8 {
        let mid = &(&lo + &hi) / &two;
        let sm = match h_at(&mid) {
            Some(hm) => sign(&hm),
            None => break,
        };
        if sm == 0 {
            break;
        }
        if sm == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Bracket::new(lo, hi)
}

/// Searches ascending exponents s of the requested parity, with t guided
/// by the logarithmic balance s ln a ~ ln c - t ln b at the window
/// midpoint, until a^s b^t - c changes sign strictly between two sample
/// points. The bracket is then tightened by exact bisection.
///
/// Preconditions on the closed window: 0 < b < 1 < a and c > 0, all three
/// pole-free. They are checked exactly at the endpoints and by root
/// counting inside; a failure is `PreconditionViolated`. If a and b are
/// both constant the crossing cannot be steered and the search refuses to
/// start with `DegenerateRatio`. `SearchExhausted` is returned once every
/// s + t <= cap candidate is out.
pub fn find_st(
    a: &RatFn,
    b: &RatFn,
    c: &RatFn,
    window: &Bracket,
    s_parity: Parity,
    t_parity: Parity,
    cap: usize,
) -> Result<ExponentWitness, FindZeroError> {
    if is_constant(a) && is_constant(b) {
        return Err(FindZeroError::DegenerateRatio);
    }
    let lo = &window.lo;
    let hi = &window.hi;
    let one = Rat::one();
    for x in [lo, hi] {
        let av = a.eval(x).ok_or_else(|| precondition("a has a pole at a window endpoint"))?;
        let bv = b.eval(x).ok_or_else(|| precondition("b has a pole at a window endpoint"))?;
        let cv = c.eval(x).ok_or_else(|| precondition("c has a pole at a window endpoint"))?;
        if av <= one {
            return Err(precondition(&format!("a({x}) = {av} is not above 1")));
        }
        if !(bv > Rat::zero() && bv < one) {
            return Err(precondition(&format!("b({x}) = {bv} is outside (0, 1)")));
        }
        if !cv.is_positive() {
            return Err(precondition(&format!("c({x}) = {cv} is not positive")));
        }
    }
    let a_minus_one = a - &RatFn::one();
    let b_minus_one = b - &RatFn::one();
    let checks: [(&UniPoly, &str); 7] = [
        (a_minus_one.num(), "a - 1"),
        (b.num(), "b"),
        (b_minus_one.num(), "b - 1"),
        (c.num(), "c"),
        (a.den(), "denominator of a"),
        (b.den(), "denominator of b"),
        (c.den(), "denominator of c"),
    ];
    for (p, what) in checks {
        if p.is_zero() {
            return Err(precondition(&format!("{what} vanishes identically")));
        }
        if p.degree().unwrap_or(0) >= 1 && count_roots_open(p, lo, hi) > 0 {
            return Err(precondition(&format!("{what} vanishes inside the window")));
        }
    }

    let table = SampleTable::build(a, b, c, lo, hi);
    let mid = GRID / 2;
    let (la_m, lb_m, lc_m) = (table.la[mid], table.lb[mid], table.lc[mid]);
    let (s_start, s_step) = match s_parity {
        Parity::Odd => (1usize, 2usize),
        Parity::Even => (2, 2),
        Parity::Any => (1, 1),
    };
    // Half-width of the t proposals tried around the estimate before
    // moving to the next s.
    const T_SPAN: i64 = 48;

    let mut s = s_start;
    while s + 1 <= cap {
        let est = if lb_m.abs() > 1e-12 { (s as f64 * la_m - lc_m) / -lb_m } else { 1.0 };
        let center: i64 =
            if est.is_finite() { est.round().clamp(1.0, (cap - s) as f64) as i64 } else { 1 };
        for delta in 0..=T_SPAN {
            for cand in [center + delta, center - delta] {
                if delta == 0 && cand < center {
                    continue;
                }
                if cand < 1 {
                    continue;
                }
                let t = cand as usize;
                if s + t > cap || !t_parity.admits(t) {
                    continue;
                }
                let mut scan = CandidateScan::new(&table, s as u32, t as u32);
                if let Some((il, ih)) = scan.find_bracket() {
                    let s_lo = scan.exact_sign(il);
                    let bracket = refine_h_bracket(
                        a,
                        b,
                        c,
                        s as u32,
                        t as u32,
                        table.xs[il].clone(),
                        table.xs[ih].clone(),
                        s_lo,
                    );
                    return Ok(ExponentWitness { s, t, bracket });
                }
            }
        }
        s += s_step;
    }
    Err(FindZeroError::SearchExhausted {
        stage: format!("no (s, t) with s + t <= {cap} brackets a sign change of a^s b^t - c"),
    })
}

/// The factor f with Z = q^(1-2(s+t)) D_A^s D_B^t f for the parallel
/// gluing of s copies of the a-term and t copies of the b-term:
/// f = (q - 1) + (1 + v_A)^s (1 + v_B)^t as an exact rational function,
/// with the edge weights baked into the effective weights.
pub fn assemble_f(pair: &ComplementaryPair, s: usize, t: usize) -> Result<RatFn, WeightError> {
    let va = effective_weight(&pair.a)?;
    let vb = effective_weight(&pair.b)?;
    let one = RatFn::one();
    let q_minus_one = RatFn::from_poly(UniPoly::from_ints(&[-1, 1]));
    let lhs = (&one + &va).pow(s as u32);
    let rhs = (&one + &vb).pow(t as u32);
    Ok(&q_minus_one + &(&lhs * &rhs))
}

fn is_starred(r: Region) -> bool {
    matches!(
        r,
        Region::IStar
            | Region::IIStar
            | Region::IIIStar
            | Region::VStar
            | Region::VIIIStar
            | Region::IXStar
    )
}

fn is_interior(r: Region) -> bool {
    matches!(
        r,
        Region::I
            | Region::II
            | Region::III
            | Region::IV
            | Region::V
            | Region::VI
            | Region::VII
            | Region::VIII
            | Region::IX
    )
}

/// Locates a sign-change certificate for Z at some q within `eps` of
/// `q0`, with all edge weights within `eps` of `v0` (they are exactly the
/// working v, which differs from v0 only if the target had to be nudged
/// off a boundary).
///
/// Dispatch: starred regions go through [`find_zero_dual`]; the line
/// v = -1 goes through the chromatic pair construction; other boundary
/// points are retargeted by up to eps/2 onto a supported region; the
/// unsupported wedge q > 4, v < -q and the non-negative set are refused.
pub fn find_zero(
    q0: &Rat,
    v0: &Rat,
    eps: &Rat,
    budget: &SearchBudget,
) -> Result<ZeroCertificate, FindZeroError> {
    assert!(eps.is_positive(), "eps must be positive");
    let region = classify_region(q0, v0);
    if is_starred(region) {
        return find_zero_dual(q0, v0, eps, budget);
    }
    match region {
        Region::Unsupported => Err(FindZeroError::UnsupportedRegion {
            q0: q0.clone(),
            v0: v0.clone(),
            detail: "q > 4 with v < -q has no certified construction".to_string(),
        }),
        Region::NonNegativeV => Err(FindZeroError::UnsupportedRegion {
            q0: q0.clone(),
            v0: v0.clone(),
            detail: "the non-negative set v >= 0 carries no supported region".to_string(),
        }),
        Region::Boundary => {
            if v0 == &rat_i(-1) {
                // The chromatic line: pairs exist at v = -1 itself above
                // the cusp, no retarget needed.
                let pair = chromatic_line_pair(q0, budget)?;
                return build_certificate(pair, q0.clone(), rat_i(-1), q0, v0, eps);
            }
            let (q_w, v_w) = retarget(q0, v0, eps).ok_or_else(|| {
                FindZeroError::UnsupportedRegion {
                    q0: q0.clone(),
                    v0: v0.clone(),
                    detail: "no supported region within eps/2 of the target".to_string(),
                }
            })?;
            let pair = complementary_pair(&q_w, &v_w, budget)?;
            build_certificate(pair, q_w, v_w, q0, v0, eps)
        }
        _ => {
            // Interior point. q = 1 needs a nudge along q: the crossing
            // scale |q - 1| vanishes there and no window can exclude it.
            if q0 == &Rat::one() {
                let (q_w, v_w) = retarget_q_only(q0, v0, eps).ok_or_else(|| {
                    FindZeroError::UnsupportedRegion {
                        q0: q0.clone(),
                        v0: v0.clone(),
                        detail: "no supported region within eps/2 along the q axis".to_string(),
                    }
                })?;
                let pair = complementary_pair(&q_w, &v_w, budget)?;
                return build_certificate(pair, q_w, v_w, q0, v0, eps);
            }
            let pair = complementary_pair(q0, v0, budget)?;
            build_certificate(pair, q0.clone(), v0.clone(), q0, v0, eps)
        }
    }
}

/// First probe within eps/2 of the target that lands in a supported open
/// region: along q at distance eps/4 then eps/2, then along v likewise.
fn retarget(q0: &Rat, v0: &Rat, eps: &Rat) -> Option<(Rat, Rat)> {
    let e4 = eps / &rat_i(4);
    let e2 = eps / &rat_i(2);
    let probes = [
        (q0 + &e4, v0.clone()),
        (q0 - &e4, v0.clone()),
        (q0 + &e2, v0.clone()),
        (q0 - &e2, v0.clone()),
        (q0.clone(), v0 - &e4),
        (q0.clone(), v0 + &e4),
        (q0.clone(), v0 - &e2),
        (q0.clone(), v0 + &e2),
    ];
    probes.into_iter().find(|(q, v)| is_interior(classify_region(q, v)))
}

fn retarget_q_only(q0: &Rat, v0: &Rat, eps: &Rat) -> Option<(Rat, Rat)> {
    let e4 = eps / &rat_i(4);
    let e2 = eps / &rat_i(2);
    let probes = [(q0 + &e4), (q0 - &e4), (q0 + &e2), (q0 - &e2)];
    probes
        .into_iter()
        .find(|q| is_interior(classify_region(q, v0)))
        .map(|q| (q, v0.clone()))
}

/// The shared tail of the pipeline: from a complementary pair at the
/// working point to a finished certificate.
fn build_certificate(
    pair: ComplementaryPair,
    q_w: Rat,
    v_w: Rat,
    q0: &Rat,
    v0: &Rat,
    eps: &Rat,
) -> Result<ZeroCertificate, FindZeroError> {
    let offset = (&q_w - q0).abs() + (&v_w - v0).abs();
    let rem = eps - &offset;
    if !rem.is_positive() {
        return Err(precondition("retargeting consumed the whole radius"));
    }

    let va = effective_weight(&pair.a)?;
    let vb = effective_weight(&pair.b)?;
    let d_a = term_split(&pair.a).z_diff;
    let d_b = term_split(&pair.b).z_diff;
    let one = RatFn::one();

    // In both cases a > 1 and b in (0, 1) on the working window encode
    // exactly the type conditions of the pair.
    let (a_fn, b_fn) = match (pair.a_type, pair.b_type) {
        (GadgetType::AMinus, GadgetType::BPlus) => (-&(&one + &va), &one + &vb),
        (GadgetType::APlus, GadgetType::BMinus) => (&one + &va, -&(&one + &vb)),
        (ta, tb) => {
            return Err(internal(format!("pair types {ta} / {tb} are not complementary")));
        }
    };
    let q_gt_1 = q_w > Rat::one();
    let (s_parity, t_parity) = match pair.a_type {
        GadgetType::AMinus => (if q_gt_1 { Parity::Odd } else { Parity::Even }, Parity::Any),
        _ => (Parity::Any, if q_gt_1 { Parity::Odd } else { Parity::Even }),
    };
    let c_fn = if q_gt_1 {
        RatFn::from_poly(UniPoly::from_ints(&[-1, 1]))
    } else {
        RatFn::from_poly(UniPoly::from_ints(&[1, -1]))
    };

    // Constraint polynomials whose sign stability on the window keeps the
    // pair types, the prefactors, and the search preconditions valid.
    let a_minus_one = &a_fn - &one;
    let b_minus_one = &b_fn - &one;
    let mut polys: Vec<UniPoly> = vec![
        UniPoly::from_ints(&[0, 1]),
        UniPoly::from_ints(&[-1, 1]),
        d_a.clone(),
        d_b.clone(),
    ];
    polys.push(a_minus_one.num().clone());
    polys.push(b_fn.num().clone());
    polys.push(b_minus_one.num().clone());
    polys.push(a_fn.den().clone());
    polys.push(b_fn.den().clone());
    for p in &polys {
        if p.is_zero() {
            return Err(FindZeroError::PoleWindowEmpty);
        }
    }

    let quarter = &rem / &rat_i(4);
    let q_dist = (&q_w - &Rat::one()).abs() / &rat_i(2);
    let zero_dist = q_w.abs() / &rat_i(2);
    let mut r = quarter.min(q_dist).min(zero_dist);
    let mut window = None;
    for _ in 0..64 {
        let wlo = &q_w - &r;
        let whi = &q_w + &r;
        let stable = polys.iter().all(|p| {
            p.degree().unwrap_or(0) == 0 || count_roots_closed(p, &wlo, &whi) == 0
        });
        if stable {
            window = Some(Bracket::new(wlo, whi));
            break;
        }
        r = &r / &rat_i(2);
    }
    let window = window.ok_or(FindZeroError::PoleWindowEmpty)?;

    let st = find_st(&a_fn, &b_fn, &c_fn, &window, s_parity, t_parity, EXPONENT_CAP)?;
    // f evaluated pointwise: expanding (1 + v_A)^s (1 + v_B)^t
    // symbolically is infeasible when the balance forces large exponents.
    let f_at = |x: &Rat| -> Result<Rat, FindZeroError> {
        let pole = |which: &str| internal(format!("{which} has a pole at q = {x} in the window"));
        let wa = va.eval(x).ok_or_else(|| pole("v_A"))?;
        let wb = vb.eval(x).ok_or_else(|| pole("v_B"))?;
        let one = Rat::one();
        let prod = &pow_u(&(&one + &wa), st.s as u32) * &pow_u(&(&one + &wb), st.t as u32);
        Ok(&(x - &one) + &prod)
    };

    let mut blo = st.bracket.lo.clone();
    let mut bhi = st.bracket.hi.clone();
    let mut s_flo = sign(&f_at(&blo)?);
    let mut s_fhi = sign(&f_at(&bhi)?);
    if s_flo * s_fhi != -1 {
        return Err(internal(format!(
            "f does not change sign strictly on the exponent bracket [{blo}, {bhi}]"
        )));
    }
    let width_cap = eps / &rat_i(8);
    let two = rat_i(2);
    while &bhi - &blo > width_cap {
        let mid = &(&blo + &bhi) / &two;
        let sm = sign(&f_at(&mid)?);
        if sm == 0 {
            // f vanishes exactly at the midpoint: renormalize to a small
            // strict bracket near it, or keep the side with the crossing.
            let mut w = &(&bhi - &blo) / &rat_i(8);
            let mut placed = false;
            for _ in 0..64 {
                let l = &mid - &w;
                let h = &mid + &w;
                let sl = sign(&f_at(&l)?);
                let sh = sign(&f_at(&h)?);
                if sl * sh == -1 {
                    blo = l;
                    bhi = h;
                    s_flo = sl;
                    s_fhi = sh;
                    placed = true;
                    break;
                }
                if sl != 0 && sl != s_flo {
                    bhi = l;
                    s_fhi = sl;
                    placed = true;
                    break;
                }
                if sh != 0 && sh != s_fhi {
                    blo = h;
                    s_flo = sh;
                    placed = true;
                    break;
                }
                w = &w / &two;
            }
            if !placed {
                return Err(internal("bisection could not separate an exact root of f".into()));
            }
        } else if sm == s_flo {
            blo = mid;
        } else {
            bhi = mid;
        }
    }

    let endpoint_signs = |x: &Rat| -> Result<(i32, i32, i32), FindZeroError> {
        let sq = sign(x);
        let sa = sign(&d_a.eval(x));
        let sb = sign(&d_b.eval(x));
        if sq == 0 || sa == 0 || sb == 0 {
            return Err(internal(format!("a prefactor vanishes at bracket endpoint q = {x}")));
        }
        Ok((sq, sa, sb))
    };
    let (sq_lo, sa_lo, sb_lo) = endpoint_signs(&blo)?;
    let (sq_hi, sa_hi, sb_hi) = endpoint_signs(&bhi)?;
    let odd_pow = |sg: i32, e: usize| if e % 2 == 0 { 1 } else { sg };
    let sign_lo = sq_lo * odd_pow(sa_lo, st.s) * odd_pow(sb_lo, st.t) * s_flo;
    let sign_hi = sq_hi * odd_pow(sa_hi, st.s) * odd_pow(sb_hi, st.t) * s_fhi;
    if sign_lo * sign_hi != -1 {
        return Err(internal("endpoint signs of Z do not differ".into()));
    }

    let width = &bhi - &blo;
    let mid = &(&blo + &bhi) / &two;
    let achieved = &(&(&mid - q0).abs() + &width) + &(&v_w - v0).abs();
    if &achieved > eps {
        return Err(internal(format!(
            "achieved distance {achieved} exceeds the requested radius {eps}"
        )));
    }

    Ok(ZeroCertificate {
        a_term: pair.a,
        b_term: pair.b,
        s: st.s,
        t: st.t,
        v0: v_w.clone(),
        bracket: Bracket::new(blo, bhi),
        sign_lo,
        sign_hi,
        prefactor_witness: vec![
            PrefactorSign { factor: "q".to_string(), sign_lo: sq_lo, sign_hi: sq_hi },
            PrefactorSign { factor: "A".to_string(), sign_lo: sa_lo, sign_hi: sa_hi },
            PrefactorSign { factor: "B".to_string(), sign_lo: sb_lo, sign_hi: sb_hi },
        ],
        dual: false,
        dual_a_term: None,
        dual_b_term: None,
        target: ZeroTarget { q0: q0.clone(), v0: v0.clone(), eps: eps.clone() },
        working_point: (q_w, v_w),
        achieved_distance: achieved,
    })
}

/// The series-parallel term whose closure is the witness graph: the first
/// a-copy in series with the parallel bundle of the remaining copies.
/// Used to push the sign change through planar duality.
fn witness_series_term(a: &GadgetTerm, b: &GadgetTerm, s: usize, t: usize) -> GadgetTerm {
    let mut rest: Vec<GadgetTerm> = Vec::with_capacity(s + t - 1);
    for _ in 1..s {
        rest.push(a.clone());
    }
    for _ in 0..t {
        rest.push(b.clone());
    }
    debug_assert!(!rest.is_empty(), "witness needs at least two copies");
    let tail = if rest.len() == 1 { rest.pop().unwrap() } else { GadgetTerm::parallel(rest) };
    GadgetTerm::series(vec![a.clone(), tail])
}

/// Certificate for a starred-region target, through the primal point
/// (q0, q0/v0). The primal search runs with radius
/// delta = eps / (1 + |v0|/|q0| + 1), so both dual coordinates stay
/// within eps. The primal pair must be planar for the transfer; the
/// duality identity is rechecked exactly at both bracket endpoints.
pub fn find_zero_dual(
    q0: &Rat,
    v0: &Rat,
    eps: &Rat,
    budget: &SearchBudget,
) -> Result<ZeroCertificate, FindZeroError> {
    assert!(eps.is_positive(), "eps must be positive");
    let region = classify_region(q0, v0);
    if !is_starred(region) {
        return Err(FindZeroError::NotStarredRegion { region });
    }
    if v0.is_zero() {
        return Err(FindZeroError::NotStarredRegion { region: Region::Boundary });
    }
    let w0 = q0 / v0;
    debug_assert!(
        is_interior(classify_region(q0, &w0)) || classify_region(q0, &w0) == Region::Boundary,
        "primal of a starred point must be unstarred"
    );
    let ratio = (v0 / q0).abs();
    let delta = eps / &(&rat_i(2) + &ratio);
    let mut cert = find_zero(q0, &w0, &delta, budget)?;

    if !(cert.a_term.is_planar() && cert.b_term.is_planar()) {
        return Err(FindZeroError::NonPlanarPair);
    }
    let dual_a = cert.a_term.dual_term().map_err(|_| FindZeroError::NonPlanarPair)?;
    let dual_b = cert.b_term.dual_term().map_err(|_| FindZeroError::NonPlanarPair)?;

    // The dual zero sits at (q1, q1 / v_w) for some q1 in the bracket;
    // both coordinate distances are maximized at the endpoints.
    let v_w = &cert.v0;
    let mut d_q = Rat::zero();
    let mut d_v = Rat::zero();
    for x in [&cert.bracket.lo, &cert.bracket.hi] {
        d_q = d_q.max((x - q0).abs());
        d_v = d_v.max((&(x / v_w) - v0).abs());
    }
    let achieved = d_q.clone().max(d_v);
    if &achieved > eps {
        return Err(internal(format!(
            "dual achieved distance {achieved} exceeds the requested radius {eps}"
        )));
    }

    let series = witness_series_term(&cert.a_term, &cert.b_term, cert.s, cert.t);
    for x in [&cert.bracket.lo, &cert.bracket.hi] {
        match verify_planar_duality(&series, x) {
            Ok(true) => {}
            Ok(false) => {
                return Err(internal(format!("planar duality identity fails at q = {x}")));
            }
            Err(e) => {
                return Err(internal(format!("duality identity could not be checked: {e}")));
            }
        }
    }

    cert.dual = true;
    cert.dual_a_term = Some(dual_a);
    cert.dual_b_term = Some(dual_b);
    cert.target = ZeroTarget { q0: q0.clone(), v0: v0.clone(), eps: eps.clone() };
    cert.achieved_distance = achieved;
    Ok(cert)
}

/// The witness graph: s copies of the a-term and t copies of the b-term
/// glued across one shared terminal pair (vertices 0 and 1).
pub fn witness_graph(a: &GadgetTerm, b: &GadgetTerm, s: usize, t: usize) -> MultiGraph {
    let mut g = MultiGraph::new(2);
    for _ in 0..s {
        append_copy(&mut g, a);
    }
    for _ in 0..t {
        append_copy(&mut g, b);
    }
    g
}

fn append_copy(g: &mut MultiGraph, t: &GadgetTerm) {
    let (mg, ts) = t.realize();
    debug_assert_eq!((ts.x, ts.y), (0, 1));
    let base = g.vertex_count();
    for _ in 2..mg.vertex_count() {
        g.add_vertex();
    }
    for (u, v, w) in mg.edges() {
        let mu = if *u < 2 { *u } else { base + *u - 2 };
        let mv = if *v < 2 { *v } else { base + *v - 2 };
        g.add_edge(mu, mv, w.clone());
    }
}

fn all_weights_equal(t: &GadgetTerm, v: &Rat) -> bool {
    match t {
        GadgetTerm::Edge(w) => w == v,
        GadgetTerm::Opaque(leaf) => &leaf.weight == v,
        GadgetTerm::Series(cs) | GadgetTerm::Parallel(cs) => {
            cs.iter().all(|c| all_weights_equal(c, v))
        }
    }
}

/// Rechecks a certificate from scratch: structural invariants, pair types
/// at both endpoints, the strict sign change of f, every recorded
/// prefactor sign, the sign composition, the distance contract, and for
/// dual certificates the duality identity. With `exhaustive` set, witness
/// graphs of at most [`EXHAUSTIVE_EDGE_CAP`] edges are additionally
/// reevaluated by subset expansion at both endpoints.
pub fn verify_certificate(cert: &ZeroCertificate, exhaustive: bool) -> bool {
    verify_certificate_report(cert, exhaustive).is_ok()
}

/// Like [`verify_certificate`] but explains the first failed check.
pub fn verify_certificate_report(
    cert: &ZeroCertificate,
    exhaustive: bool,
) -> Result<(), String> {
    if cert.s < 1 || cert.t < 1 {
        return Err("exponents must be at least 1".to_string());
    }
    if cert.bracket.lo >= cert.bracket.hi {
        return Err("bracket is empty".to_string());
    }
    if !cert.target.eps.is_positive() {
        return Err("target radius is not positive".to_string());
    }
    for sg in [cert.sign_lo, cert.sign_hi] {
        if sg != 1 && sg != -1 {
            return Err(format!("endpoint sign {sg} is not +-1"));
        }
    }
    if cert.sign_lo * cert.sign_hi != -1 {
        return Err("endpoint signs do not differ".to_string());
    }
    if cert.prefactor_witness.len() != 3 {
        return Err("prefactor witness must have exactly three factors".to_string());
    }
    for (p, want) in cert.prefactor_witness.iter().zip(["q", "A", "B"]) {
        if p.factor != want {
            return Err(format!("prefactor factor {} out of order, expected {want}", p.factor));
        }
    }
    if cert.v0 != cert.working_point.1 {
        return Err("stored v0 disagrees with the working point".to_string());
    }
    for term in [&cert.a_term, &cert.b_term] {
        if !all_weights_equal(term, &cert.v0) {
            return Err("a witness term carries an edge weight other than v0".to_string());
        }
    }
    if cert.a_term.is_dipole() && cert.b_term.is_dipole() {
        return Err("both terms are dipoles".to_string());
    }

    let lo = &cert.bracket.lo;
    let hi = &cert.bracket.hi;
    let mut f_signs = [0i32; 2];
    let mut types = [(GadgetType::Boundary, GadgetType::Boundary); 2];
    for (k, x) in [lo, hi].into_iter().enumerate() {
        let wa = effective_weight_at(&cert.a_term, x)
            .map_err(|e| format!("a-term weight at q = {x}: {e}"))?;
        let wb = effective_weight_at(&cert.b_term, x)
            .map_err(|e| format!("b-term weight at q = {x}: {e}"))?;
        types[k] = (classify_value(&wa), classify_value(&wb));
        let one = Rat::one();
        let f_val = &(x - &one)
            + &(&pow_u(&(&one + &wa), cert.s as u32) * &pow_u(&(&one + &wb), cert.t as u32));
        f_signs[k] = sign(&f_val);
    }
    for (ta, tb) in types {
        let complementary = matches!(
            (ta, tb),
            (GadgetType::AMinus, GadgetType::BPlus) | (GadgetType::APlus, GadgetType::BMinus)
        );
        if !complementary {
            return Err(format!("pair types {ta} / {tb} are not complementary on the bracket"));
        }
    }
    if types[0] != types[1] {
        return Err("pair types flip between the bracket endpoints".to_string());
    }
    if f_signs[0] == 0 || f_signs[1] == 0 || f_signs[0] * f_signs[1] != -1 {
        return Err("f does not change sign strictly across the bracket".to_string());
    }

    let odd_pow = |sg: i32, e: usize| if e % 2 == 0 { 1 } else { sg };
    for (k, x) in [lo, hi].into_iter().enumerate() {
        let sq = sign(x);
        let sa = sign(&term_split_scalar(&cert.a_term, x).d);
        let sb = sign(&term_split_scalar(&cert.b_term, x).d);
        if sq == 0 || sa == 0 || sb == 0 {
            return Err(format!("a prefactor vanishes at q = {x}"));
        }
        let stored = &cert.prefactor_witness;
        let stored_k = |i: usize| if k == 0 { stored[i].sign_lo } else { stored[i].sign_hi };
        if stored_k(0) != sq || stored_k(1) != sa || stored_k(2) != sb {
            return Err(format!("recorded prefactor signs disagree at q = {x}"));
        }
        let f_sg = f_signs[k];
        let composed = sq * odd_pow(sa, cert.s) * odd_pow(sb, cert.t) * f_sg;
        let stored_sign = if k == 0 { cert.sign_lo } else { cert.sign_hi };
        if composed != stored_sign {
            return Err(format!(
                "sign composition at q = {x} gives {composed}, certificate says {stored_sign}"
            ));
        }
    }

    let two = rat_i(2);
    if cert.dual {
        let (Some(da), Some(db)) = (&cert.dual_a_term, &cert.dual_b_term) else {
            return Err("dual certificate misses a dualized term".to_string());
        };
        let expect_da =
            cert.a_term.dual_term().map_err(|e| format!("a-term is not dualizable: {e}"))?;
        let expect_db =
            cert.b_term.dual_term().map_err(|e| format!("b-term is not dualizable: {e}"))?;
        if da != &expect_da || db != &expect_db {
            return Err("dualized terms do not match the primal terms".to_string());
        }
        let v_w = &cert.v0;
        if v_w.is_zero() {
            return Err("dual certificate with v0 = 0".to_string());
        }
        let mut d_q = Rat::zero();
        let mut d_v = Rat::zero();
        for x in [lo, hi] {
            d_q = d_q.max((x - &cert.target.q0).abs());
            d_v = d_v.max((&(x / v_w) - &cert.target.v0).abs());
        }
        let achieved = d_q.max(d_v);
        if achieved != cert.achieved_distance {
            return Err("stored dual distance disagrees with the bracket".to_string());
        }
        if achieved > cert.target.eps {
            return Err("dual distance exceeds the requested radius".to_string());
        }
        let series = witness_series_term(&cert.a_term, &cert.b_term, cert.s, cert.t);
        for x in [lo, hi] {
            match verify_planar_duality(&series, x) {
                Ok(true) => {}
                Ok(false) => return Err(format!("duality identity fails at q = {x}")),
                Err(e) => return Err(format!("duality identity not checkable at q = {x}: {e}")),
            }
        }
    } else {
        if cert.dual_a_term.is_some() || cert.dual_b_term.is_some() {
            return Err("primal certificate carries dualized terms".to_string());
        }
        let width = hi - lo;
        let mid = &(lo + hi) / &two;
        let achieved = &(&(&mid - &cert.target.q0).abs() + &width)
            + &(&cert.working_point.1 - &cert.target.v0).abs();
        if achieved != cert.achieved_distance {
            return Err("stored distance disagrees with the bracket".to_string());
        }
        if achieved > cert.target.eps {
            return Err("distance exceeds the requested radius".to_string());
        }
    }

    if exhaustive {
        let edges = cert.s * cert.a_term.realized_edge_count()
            + cert.t * cert.b_term.realized_edge_count();
        if edges <= EXHAUSTIVE_EDGE_CAP {
            let g = witness_graph(&cert.a_term, &cert.b_term, cert.s, cert.t);
            let (s_lo, s_hi) = if edges <= SUBSET_EDGE_CAP {
                let z = z_poly_q_with_budget(&g, SUBSET_EDGE_CAP)
                    .map_err(|e| format!("subset oracle failed: {e}"))?;
                (sign(&z.eval(lo)), sign(&z.eval(hi)))
            } else {
                (sign(&z_del_con(&g, lo)), sign(&z_del_con(&g, hi)))
            };
            if s_lo != cert.sign_lo || s_hi != cert.sign_hi {
                return Err(format!(
                    "witness oracle signs ({s_lo}, {s_hi}) disagree with certificate ({}, {})",
                    cert.sign_lo, cert.sign_hi
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateParseError {
    Json(String),
    MissingField(&'static str),
    BadValue { field: &'static str, detail: String },
}

impl std::fmt::Display for CertificateParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateParseError::Json(e) => write!(f, "malformed JSON: {e}"),
            CertificateParseError::MissingField(name) => write!(f, "missing field {name}"),
            CertificateParseError::BadValue { field, detail } => {
                write!(f, "bad value for {field}: {detail}")
            }
        }
    }
}

impl std::error::Error for CertificateParseError {}

impl ZeroCertificate {
    /// Fixed-layout JSON serialization. Field order and whitespace are
    /// deterministic; rationals render as `p/q` (or a bare integer),
    /// gadget terms in their prefix notation with opaque leaf weights
    /// implied by `v0`.
    pub fn to_json(&self) -> String {
        let term_opt = |t: &Option<GadgetTerm>| match t {
            Some(t) => format!("\"{t}\""),
            None => "null".to_string(),
        };
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"a_term\": \"{}\",\n", self.a_term));
        out.push_str(&format!("  \"b_term\": \"{}\",\n", self.b_term));
        out.push_str(&format!("  \"s\": {},\n", self.s));
        out.push_str(&format!("  \"t\": {},\n", self.t));
        out.push_str(&format!("  \"v0\": \"{}\",\n", self.v0));
        out.push_str(&format!(
            "  \"bracket\": {{ \"lo\": \"{}\", \"hi\": \"{}\" }},\n",
            self.bracket.lo, self.bracket.hi
        ));
        out.push_str(&format!("  \"sign_lo\": {},\n", self.sign_lo));
        out.push_str(&format!("  \"sign_hi\": {},\n", self.sign_hi));
        out.push_str("  \"prefactor_witness\": [\n");
        for (i, p) in self.prefactor_witness.iter().enumerate() {
            let comma = if i + 1 == self.prefactor_witness.len() { "" } else { "," };
            out.push_str(&format!(
                "    {{ \"factor\": \"{}\", \"sign_lo\": {}, \"sign_hi\": {} }}{comma}\n",
                p.factor, p.sign_lo, p.sign_hi
            ));
        }
        out.push_str("  ],\n");
        out.push_str(&format!("  \"dual\": {},\n", self.dual));
        out.push_str(&format!("  \"dual_a_term\": {},\n", term_opt(&self.dual_a_term)));
        out.push_str(&format!("  \"dual_b_term\": {},\n", term_opt(&self.dual_b_term)));
        out.push_str(&format!(
            "  \"target\": {{ \"q0\": \"{}\", \"v0\": \"{}\", \"eps\": \"{}\" }},\n",
            self.target.q0, self.target.v0, self.target.eps
        ));
        out.push_str(&format!(
            "  \"working_point\": {{ \"q\": \"{}\", \"v\": \"{}\" }},\n",
            self.working_point.0, self.working_point.1
        ));
        out.push_str(&format!("  \"achieved_distance\": \"{}\"\n", self.achieved_distance));
        out.push_str("}\n");
        out
    }

    pub fn from_json(text: &str) -> Result<ZeroCertificate, CertificateParseError> {
        use serde_json::Value;
        let root: Value = serde_json::from_str(text)
            .map_err(|e| CertificateParseError::Json(e.to_string()))?;
        let obj = root
            .as_object()
            .ok_or(CertificateParseError::BadValue {
                field: "certificate",
                detail: "top level is not an object".to_string(),
            })?;
        let field = |name: &'static str| -> Result<&Value, CertificateParseError> {
            obj.get(name).ok_or(CertificateParseError::MissingField(name))
        };
        let str_of = |name: &'static str, v: &Value| -> Result<String, CertificateParseError> {
            v.as_str().map(str::to_string).ok_or(CertificateParseError::BadValue {
                field: name,
                detail: "expected a string".to_string(),
            })
        };
        let rat_of = |name: &'static str, v: &Value| -> Result<Rat, CertificateParseError> {
            let s = v.as_str().ok_or(CertificateParseError::BadValue {
                field: name,
                detail: "expected a rational string".to_string(),
            })?;
            crate::algebra::rat::parse_rational(s).map_err(|e| CertificateParseError::BadValue {
                field: name,
                detail: e.to_string(),
            })
        };
        let exponent_of = |name: &'static str, v: &Value| -> Result<usize, CertificateParseError> {
            let n = v.as_u64().ok_or(CertificateParseError::BadValue {
                field: name,
                detail: "expected a non-negative integer".to_string(),
            })?;
            if n < 1 || n > EXPONENT_CAP as u64 {
                return Err(CertificateParseError::BadValue {
                    field: name,
                    detail: format!("exponent {n} out of range"),
                });
            }
            Ok(n as usize)
        };
        let sign_of = |name: &'static str, v: &Value| -> Result<i32, CertificateParseError> {
            match v.as_i64() {
                Some(1) => Ok(1),
                Some(-1) => Ok(-1),
                _ => Err(CertificateParseError::BadValue {
                    field: name,
                    detail: "expected 1 or -1".to_string(),
                }),
            }
        };

        let v0 = rat_of("v0", field("v0")?)?;
        let term_of = |name: &'static str, v: &Value| -> Result<GadgetTerm, CertificateParseError> {
            let s = str_of(name, v)?;
            GadgetTerm::parse(&s, &v0).map_err(|e| CertificateParseError::BadValue {
                field: name,
                detail: e.to_string(),
            })
        };
        let a_term = term_of("a_term", field("a_term")?)?;
        let b_term = term_of("b_term", field("b_term")?)?;
        let s = exponent_of("s", field("s")?)?;
        let t = exponent_of("t", field("t")?)?;

        let bracket_val = field("bracket")?;
        let bracket_obj = bracket_val.as_object().ok_or(CertificateParseError::BadValue {
            field: "bracket",
            detail: "expected an object".to_string(),
        })?;
        let lo = rat_of(
            "bracket.lo",
            bracket_obj.get("lo").ok_or(CertificateParseError::MissingField("bracket.lo"))?,
        )?;
        let hi = rat_of(
            "bracket.hi",
            bracket_obj.get("hi").ok_or(CertificateParseError::MissingField("bracket.hi"))?,
        )?;
        if lo >= hi {
            return Err(CertificateParseError::BadValue {
                field: "bracket",
                detail: "lo must be below hi".to_string(),
            });
        }

        let sign_lo = sign_of("sign_lo", field("sign_lo")?)?;
        let sign_hi = sign_of("sign_hi", field("sign_hi")?)?;

        let pf_val = field("prefactor_witness")?;
        let pf_arr = pf_val.as_array().ok_or(CertificateParseError::BadValue {
            field: "prefactor_witness",
            detail: "expected an array".to_string(),
        })?;
        let mut prefactor_witness = Vec::with_capacity(pf_arr.len());
        for item in pf_arr {
            let io = item.as_object().ok_or(CertificateParseError::BadValue {
                field: "prefactor_witness",
                detail: "expected objects".to_string(),
            })?;
            let factor = str_of(
                "prefactor_witness.factor",
                io.get("factor")
                    .ok_or(CertificateParseError::MissingField("prefactor_witness.factor"))?,
            )?;
            let p_lo = sign_of(
                "prefactor_witness.sign_lo",
                io.get("sign_lo")
                    .ok_or(CertificateParseError::MissingField("prefactor_witness.sign_lo"))?,
            )?;
            let p_hi = sign_of(
                "prefactor_witness.sign_hi",
                io.get("sign_hi")
                    .ok_or(CertificateParseError::MissingField("prefactor_witness.sign_hi"))?,
            )?;
            prefactor_witness.push(PrefactorSign { factor, sign_lo: p_lo, sign_hi: p_hi });
        }

        let dual = field("dual")?.as_bool().ok_or(CertificateParseError::BadValue {
            field: "dual",
            detail: "expected a boolean".to_string(),
        })?;
        let opt_term = |name: &'static str,
                        v: &Value|
         -> Result<Option<GadgetTerm>, CertificateParseError> {
            if v.is_null() {
                Ok(None)
            } else {
                Ok(Some(term_of(name, v)?))
            }
        };
        let dual_a_term = opt_term("dual_a_term", field("dual_a_term")?)?;
        let dual_b_term = opt_term("dual_b_term", field("dual_b_term")?)?;

        let target_val = field("target")?;
        let to = target_val.as_object().ok_or(CertificateParseError::BadValue {
            field: "target",
            detail: "expected an object".to_string(),
        })?;
        let target = ZeroTarget {
            q0: rat_of(
                "target.q0",
                to.get("q0").ok_or(CertificateParseError::MissingField("target.q0"))?,
            )?,
            v0: rat_of(
                "target.v0",
                to.get("v0").ok_or(CertificateParseError::MissingField("target.v0"))?,
            )?,
            eps: rat_of(
                "target.eps",
                to.get("eps").ok_or(CertificateParseError::MissingField("target.eps"))?,
            )?,
        };

        let wp_val = field("working_point")?;
        let wo = wp_val.as_object().ok_or(CertificateParseError::BadValue {
            field: "working_point",
            detail: "expected an object".to_string(),
        })?;
        let working_point = (
            rat_of(
                "working_point.q",
                wo.get("q").ok_or(CertificateParseError::MissingField("working_point.q"))?,
            )?,
            rat_of(
                "working_point.v",
                wo.get("v").ok_or(CertificateParseError::MissingField("working_point.v"))?,
            )?,
        );

        let achieved_distance = rat_of("achieved_distance", field("achieved_distance")?)?;

        Ok(ZeroCertificate {
            a_term,
            b_term,
            s,
            t,
            v0,
            bracket: Bracket::new(lo, hi),
            sign_lo,
            sign_hi,
            prefactor_witness,
            dual,
            dual_a_term,
            dual_b_term,
            target,
            working_point,
            achieved_distance,
        })
    }
}
