//! Acceptance suite. Each test covers one numbered criterion and prints
//! a single pass/fail line (visible with --nocapture); the wall-clock
//! budgets are asserted, not just reported.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tutte_zeros::algebra::rat::{pow_u, sign};
use tutte_zeros::graph::leaves::petersen_minus_edge;
use tutte_zeros::graph::multigraph::TwoTerminalGraph;
use tutte_zeros::regions::v_diamond;
use tutte_zeros::tutte::delcon::z_del_con;
use tutte_zeros::tutte::duality::verify_planar_duality;
use tutte_zeros::tutte::glue::{verify_gluing_factorization, GlueError};
use tutte_zeros::tutte::split::{term_split_scalar, SplitScalar};
use tutte_zeros::tutte::subset::{z_poly_q, z_subset};
use tutte_zeros::weights::{dipole_weight, path_weight};
use tutte_zeros::zero::FindZeroError;
use tutte_zeros::{
    classify_region, effective_weight, effective_weight_at, find_zero, rat, rat_i,
    verify_certificate_report, ForgeError, GadgetTerm, MultiGraph, Rat, RatFn, Region,
    SearchBudget, ZeroCertificate,
};

use num_traits::{One, Zero};

macro_rules! check {
    ($n:expr, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            let reason = format!($($msg)+);
            println!("criterion {}: fail ({reason})", $n);
            panic!("criterion {} failed: {reason}", $n);
        }
    };
}

fn report(n: usize, detail: &str, started: Instant) {
    println!("criterion {n}: pass ({detail}, {:.1}s)", started.elapsed().as_secs_f64());
}

fn budget(n: usize, started: Instant, limit_secs: f64) {
    let took = started.elapsed().as_secs_f64();
    check!(n, took < limit_secs, "took {took:.1}s, budget {limit_secs}s");
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = random_rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random series-parallel term with exactly `edges` leaf edges and
/// nonzero weights.
fn random_sp_term(rng: &mut ChaCha8Rng, edges: usize) -> GadgetTerm {
    if edges == 1 {
        return GadgetTerm::edge(random_nonzero_rat(rng));
    }
    let left = rng.gen_range(1..edges);
    let a = random_sp_term(rng, left);
    let b = random_sp_term(rng, edges - left);
    if rng.gen_bool(0.5) {
        GadgetTerm::series(vec![a, b])
    } else {
        GadgetTerm::parallel(vec![a, b])
    }
}

#[test]
fn criterion_01_oracle_agreement() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut rounds = 0usize;
    for graph_idx in 0..200 {
        let n = rng.gen_range(2..=10usize);
        let m = rng.gen_range(1..=12usize);
        let mut pairs = Vec::with_capacity(m);
        while pairs.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                pairs.push((u, v));
            }
        }
        for _ in 0..5 {
            let q = random_rat(&mut rng);
            let v = random_rat(&mut rng);
            let mut g = MultiGraph::new(n);
            for (a, b) in &pairs {
                g.add_edge(*a, *b, v.clone());
            }
            let by_delcon = z_del_con(&g, &q);
            let by_subset = z_subset(&g, &q).expect("within subset budget");
            let by_poly = z_poly_q(&g).expect("within subset budget").eval(&q);
            check!(
                1,
                by_delcon == by_subset && by_subset == by_poly,
                "oracles disagree on graph {graph_idx} at (q, v) = ({q}, {v})"
            );
            rounds += 1;
        }
    }
    budget(1, started, 60.0);
    report(1, &format!("three oracles agree on {rounds} evaluations"), started);
}

fn ratfn_pow(f: &RatFn, k: usize) -> RatFn {
    let mut acc = RatFn::constant(Rat::one());
    for _ in 0..k {
        acc = &acc * f;
    }
    acc
}

#[test]
fn criterion_02_closed_form_weights() {
    let started = Instant::now();
    let one = RatFn::constant(Rat::one());
    let x = RatFn::var();
    let mut checks = 0usize;
    for v in [rat_i(-3), rat(-1, 2), rat(5, 2)] {
        let edge = GadgetTerm::edge(v.clone());
        for k in 2..=6usize {
            let dipole = GadgetTerm::parallel_copies(&edge, k);
            let w = effective_weight(&dipole).expect("dipole weight defined");
            check!(
                2,
                w == RatFn::constant(dipole_weight(k, &v)),
                "dipole closed form fails at k = {k}, v = {v}"
            );
            let path = GadgetTerm::series_copies(&edge, k);
            let w = effective_weight(&path).expect("path weight defined");
            check!(
                2,
                w == path_weight(k, &v).expect("path weight defined"),
                "path closed form fails at k = {k}, v = {v}"
            );
            checks += 2;
        }
        // Resummed form: v_{P_s} = q / ((1 + q/v)^s - 1).
        for s in 1..=5usize {
            let base = &one + &(&x / &RatFn::constant(v.clone()));
            let denom = &ratfn_pow(&base, s) - &one;
            let closed = &x / &denom;
            check!(
                2,
                path_weight(s, &v).expect("path weight defined") == closed,
                "resummed path identity fails at s = {s}, v = {v}"
            );
            checks += 1;
        }
    }
    budget(2, started, 10.0);
    report(2, &format!("{checks} exact identities"), started);
}

#[test]
fn criterion_03_gluing_factorization() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3003);
    let mut rounds = 0usize;
    for pair_idx in 0..50 {
        // The last five pairs use the full 8-edge budget on both sides.
        let big = pair_idx >= 45;
        let (f_lo, f_hi) = if big { (3, 4) } else { (1, 3) };
        let left_edges = rng.gen_range(f_lo..=f_hi);
        let right_edges = rng.gen_range(f_lo..=f_hi);
        let f_term = GadgetTerm::series(vec![
            random_sp_term(&mut rng, left_edges),
            random_sp_term(&mut rng, right_edges),
        ]);
        let h_edges = if big { rng.gen_range(7..=8) } else { rng.gen_range(2..=6) };
        let h_term = random_sp_term(&mut rng, h_edges);

        let (fg, f_ends) = f_term.realize();
        let f = TwoTerminalGraph::new(fg, f_ends.x, f_ends.y).expect("series term is two-terminal");
        let (hg, h_ends) = h_term.realize();

        let mut done = 0;
        let mut attempts = 0;
        while done < 5 {
            attempts += 1;
            check!(3, attempts < 100, "cannot find admissible q for pair {pair_idx}");
            let q = random_rat(&mut rng);
            if q.is_zero() || q.is_one() {
                continue;
            }
            match verify_gluing_factorization(&f, &hg, h_ends.x, h_ends.y, &q) {
                Ok(ok) => {
                    check!(3, ok, "factorization fails for pair {pair_idx} at q = {q}");
                    done += 1;
                    rounds += 1;
                }
                // Effective weight poles are excluded, not failures.
                Err(GlueError::DegenerateEffectiveWeight) => continue,
                Err(e) => check!(3, false, "oracle error for pair {pair_idx} at q = {q}: {e}"),
            }
        }
    }
    budget(3, started, 60.0);
    report(3, &format!("{rounds} exact factorizations"), started);
}

#[test]
fn criterion_04_planar_duality() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4004);
    let mut rounds = 0usize;
    let mut run = |t: &GadgetTerm, rng: &mut ChaCha8Rng, label: &str| {
        let mut done = 0;
        while done < 20 {
            let q = random_rat(rng);
            if q.is_zero() {
                continue;
            }
            match verify_planar_duality(t, &q) {
                Ok(ok) => check!(4, ok, "duality fails for {label} at q = {q}"),
                Err(e) => check!(4, false, "duality oracle error for {label} at q = {q}: {e}"),
            }
            done += 1;
            rounds += 1;
        }
    };
    for n in 3..=5usize {
        let weights: Vec<GadgetTerm> =
            (0..n).map(|_| GadgetTerm::edge(random_nonzero_rat(&mut rng))).collect();
        let cycle = GadgetTerm::series(weights.clone());
        run(&cycle, &mut rng, &format!("cycle n = {n}"));
        let dipole = GadgetTerm::parallel(weights);
        run(&dipole, &mut rng, &format!("dipole n = {n}"));
    }
    for idx in 0..20 {
        let edges = rng.gen_range(2..=8);
        let t = random_sp_term(&mut rng, edges);
        run(&t, &mut rng, &format!("random term {idx}"));
    }
    budget(4, started, 30.0);
    report(4, &format!("{rounds} exact duality identities"), started);
}

#[test]
fn criterion_05_lens_brackets() {
    let started = Instant::now();
    // At q = 1 the two branch values satisfy x^2 = x + 1 and
    // x^2 + x = 1 respectively; certify the brackets by sign changes
    // of those quadratics at the endpoints.
    let fine = rat(1, 1_000_000_000);
    let d = v_diamond(&rat_i(1), &fine).expect("1 inside (0, 32/27)");
    check!(5, d.v_plus.width() <= fine, "v_plus bracket too wide");
    check!(5, d.v_minus.width() <= fine, "v_minus bracket too wide");
    let golden = |x: &Rat| &(x * x) - &(x + &Rat::one());
    check!(
        5,
        sign(&golden(&d.v_plus.lo)) * sign(&golden(&d.v_plus.hi)) == -1,
        "v_plus bracket misses the root of x^2 - x - 1"
    );
    let conj = |x: &Rat| &(&(x * x) + x) - &Rat::one();
    check!(
        5,
        sign(&conj(&d.v_minus.lo)) * sign(&conj(&d.v_minus.hi)) == -1,
        "v_minus bracket misses the root of x^2 + x - 1"
    );

    // v^2 (v + 2) = q reproduces the lower branch across the cusp range.
    let width = rat(1, 4096);
    for i in 1..=50i64 {
        let q = rat(32 * i, 27 * 51);
        let d = v_diamond(&q, &width).expect("inside (0, 32/27)");
        let cubic = |x: &Rat| &(&(x * x) * &(x + &rat_i(2))) - &q;
        check!(
            5,
            sign(&cubic(&d.v_minus.lo)) * sign(&cubic(&d.v_minus.hi)) == -1,
            "derived test misses v_minus at q = {q}"
        );
    }
    budget(5, started, 5.0);
    report(5, "golden-ratio brackets and 50 lower-branch reproductions", started);
}

const PETERSEN_POINTS: [(i64, i64, i64, i64); 20] = [
    (9, 4, -47, 20),
    (9, 4, -5, 2),
    (9, 4, -53, 20),
    (9, 4, -11, 4),
    (9, 4, -14, 5),
    (5, 2, -13, 5),
    (5, 2, -11, 4),
    (5, 2, -29, 10),
    (5, 2, -3, 1),
    (11, 4, -57, 20),
    (11, 4, -3, 1),
    (11, 4, -63, 20),
    (13, 4, -67, 20),
    (13, 4, -7, 2),
    (13, 4, -33, 10),
    (7, 2, -71, 20),
    (7, 2, -18, 5),
    (7, 2, -73, 20),
    (15, 4, -77, 20),
    (15, 4, -19, 5),
];

#[test]
fn criterion_06_petersen_gadget_bound() {
    let started = Instant::now();
    for (qn, qd, vn, vd) in PETERSEN_POINTS {
        let q = rat(qn, qd);
        let v = rat(vn, vd);
        let term = petersen_minus_edge(v.clone());
        let w = effective_weight_at(&term, &q).expect("no pole at sample");
        check!(
            6,
            -&q < w && w < Rat::zero(),
            "gadget bound fails at (q, v) = ({q}, {v}): v_F = {w}"
        );
    }
    budget(6, started, 30.0);
    report(6, "v_F in (-q, 0) at 20 sample points", started);
}

const REGION_LISTS: &[(&str, [(i64, i64, i64, i64); 5])] = &[
    ("I", [(-1, 1, -3, 1), (-2, 1, -5, 2), (-1, 2, -4, 1), (-3, 1, -3, 1), (-5, 4, -17, 4)]),
    ("II", [(1, 2, -3, 1), (1, 4, -5, 2), (3, 4, -7, 2), (1, 3, -9, 4), (2, 3, -4, 1)]),
    ("III", [(3, 2, -3, 1), (5, 4, -5, 2), (7, 4, -7, 2), (4, 3, -9, 4), (5, 3, -4, 1)]),
    ("IV", [(5, 2, -3, 1), (7, 2, -4, 1), (5, 2, -11, 4), (7, 2, -15, 4), (11, 4, -3, 1)]),
    ("V", [(3, 1, -5, 2), (4, 1, -3, 1), (5, 1, -7, 2), (7, 2, -5, 2), (6, 1, -4, 1)]),
    ("VI", [(5, 2, -3, 2), (3, 1, -7, 4), (7, 2, -15, 8), (11, 4, -3, 2), (10, 3, -9, 5)]),
    ("VII", [(5, 2, -1, 2), (3, 1, -3, 4), (4, 1, -1, 2), (7, 2, -9, 10), (10, 1, -1, 5)]),
    ("VIII", [(1, 2, -39, 20), (1, 1, -15, 8), (1, 4, -159, 80), (3, 4, -9, 5), (9, 8, -7, 4)]),
    ("IX", [(3, 2, -31, 20), (3, 2, -7, 5), (7, 4, -3, 2), (13, 10, -8, 5), (9, 5, -6, 5)]),
    ("I*", [(-1, 1, 1, 4), (-2, 1, 3, 4), (-3, 1, 1, 1), (-1, 2, 1, 5), (-4, 1, 3, 2)]),
    ("II*", [(1, 2, -1, 5), (1, 4, -1, 10), (3, 4, -1, 4), (1, 3, -1, 8), (2, 3, -3, 10)]),
    ("III*", [(3, 2, -1, 2), (5, 4, -2, 5), (7, 4, -5, 8), (4, 3, -1, 2), (5, 3, -7, 10)]),
    ("V*", [(7, 2, -3, 2), (4, 1, -3, 2), (3, 1, -5, 4), (5, 1, -7, 4), (7, 2, -8, 5)]),
    ("VIII*", [(1, 2, -10, 39), (1, 1, -10, 19), (1, 4, -20, 159), (3, 4, -5, 12), (9, 8, -9, 14)]),
    ("IX*", [(3, 2, -30, 31), (3, 2, -14, 15), (7, 4, -9, 10), (13, 10, -9, 10), (9, 5, -19, 20)]),
];

/// Outcome of one density run, with enough detail to compare runs
/// byte for byte.
enum DensityOutcome {
    Certified(Box<ZeroCertificate>),
    Exhausted(String),
}

fn density_run(n: usize) -> Vec<(&'static str, Rat, Rat, DensityOutcome)> {
    let eps = rat(1, 20);
    let budget = SearchBudget::default();
    let mut out = Vec::new();
    for (name, points) in REGION_LISTS {
        for (qn, qd, vn, vd) in points {
            let q0 = rat(*qn, *qd);
            let v0 = rat(*vn, *vd);
            let outcome = match find_zero(&q0, &v0, &eps, &budget) {
                Ok(cert) => DensityOutcome::Certified(Box::new(cert)),
                Err(e) => {
                    let exhausted = matches!(
                        &e,
                        FindZeroError::SearchExhausted { .. }
                            | FindZeroError::Gadget(ForgeError::SearchExhausted { .. })
                    );
                    check!(
                        n,
                        *name == "VII" && exhausted,
                        "({q0}, {v0}) in {name} failed without a clean exhaustion: {e}"
                    );
                    DensityOutcome::Exhausted(e.to_string())
                }
            };
            out.push((*name, q0, v0, outcome));
        }
    }
    out
}

#[test]
fn criterion_07_density_per_region() {
    let started = Instant::now();
    let results = density_run(7);
    let mut certified = 0usize;
    let mut exhausted = 0usize;
    for (name, q0, v0, outcome) in &results {
        match outcome {
            DensityOutcome::Certified(cert) => {
                check!(
                    7,
                    cert.target.q0 == *q0 && cert.target.v0 == *v0,
                    "certificate for ({q0}, {v0}) in {name} records the wrong target"
                );
                if let Err(m) = verify_certificate_report(cert, true) {
                    check!(7, false, "({q0}, {v0}) in {name} fails verification: {m}");
                }
                certified += 1;
            }
            DensityOutcome::Exhausted(_) => exhausted += 1,
        }
    }
    check!(7, certified + exhausted == 75, "wrong point count");
    budget(7, started, 600.0);
    report(
        7,
        &format!("{certified} verified certificates, {exhausted} clean exhaustions in VII"),
        started,
    );
}

/// Z of the witness graph at x through the split algebra: s parallel
/// copies of a and t of b across the shared terminals. An identical-copy
/// bundle has weight (1 + v)^k - 1 and diff-part d^k / q^(2k-2).
fn witness_z_sign(cert: &ZeroCertificate, x: &Rat) -> i32 {
    let bundle = |term: &GadgetTerm, k: usize| -> SplitScalar {
        let sp = term_split_scalar(term, x);
        let v = &(x * &sp.s) / &sp.d;
        let vk = &pow_u(&(&Rat::one() + &v), k as u32) - &Rat::one();
        let dk = &pow_u(&sp.d, k as u32) / &pow_u(x, 2 * (k as u32) - 2);
        SplitScalar { s: &(&vk * &dk) / x, d: dk }
    };
    let a = bundle(&cert.a_term, cert.s);
    let b = bundle(&cert.b_term, cert.t);
    sign(&a.parallel(&b, x).z_total())
}

#[test]
fn criterion_08_chromatic_line() {
    let started = Instant::now();
    let eps = rat(1, 20);
    let budget_caps = SearchBudget::default();
    let minus_one = rat_i(-1);
    for q0 in [rat(5, 4), rat(13, 10), rat(3, 2), rat(5, 2)] {
        let cert = match find_zero(&q0, &minus_one, &eps, &budget_caps) {
            Ok(c) => c,
            Err(e) => {
                check!(8, false, "chromatic target q0 = {q0} failed: {e}");
                unreachable!()
            }
        };
        check!(8, cert.v0 == minus_one, "working point left the chromatic line at q0 = {q0}");
        if let Err(m) = verify_certificate_report(&cert, true) {
            check!(8, false, "chromatic certificate at q0 = {q0} fails verification: {m}");
        }
        // Independent cross-check: the witness's chromatic polynomial
        // changes sign across the bracket.
        let s_lo = witness_z_sign(&cert, &cert.bracket.lo);
        let s_hi = witness_z_sign(&cert, &cert.bracket.hi);
        check!(
            8,
            s_lo == cert.sign_lo && s_hi == cert.sign_hi && s_lo != s_hi,
            "chromatic sign change fails at q0 = {q0}: ({s_lo}, {s_hi})"
        );
    }
    // Below the cusp the chromatic line is zero-free; the pipeline must
    // refuse rather than certify.
    match find_zero(&rat(11, 10), &minus_one, &eps, &budget_caps) {
        Err(FindZeroError::Gadget(ForgeError::NotInteriorPoint { .. })) => {}
        Err(e) => check!(8, false, "q0 = 11/10 failed with the wrong error: {e}"),
        Ok(_) => check!(8, false, "q0 = 11/10 certified inside the zero-free strip"),
    }
    budget(8, started, 120.0);
    report(8, "four chromatic certificates cross-checked, strip refusal confirmed", started);
}

#[test]
fn criterion_09_unsupported_wedge() {
    let started = Instant::now();
    let eps = rat(1, 10);
    let budget_caps = SearchBudget::default();
    for (qn, vn) in [(5, -6), (6, -7), (10, -11)] {
        match find_zero(&rat_i(qn), &rat_i(vn), &eps, &budget_caps) {
            Err(FindZeroError::UnsupportedRegion { .. }) => {}
            Err(e) => check!(9, false, "({qn}, {vn}) failed with the wrong error: {e}"),
            Ok(_) => check!(9, false, "({qn}, {vn}) certified inside the open wedge"),
        }
    }
    // The region map marks exactly the q > 4, v < -q wedge unsupported.
    let steps = 50i64;
    let mut wedge_cells = 0usize;
    for i in 0..steps {
        for j in 0..steps {
            let q = &rat_i(-2) + &(&rat(7 * i, 1) / &rat_i(steps - 1));
            let v = &rat_i(-6) + &(&rat(7 * j, 1) / &rat_i(steps - 1));
            let in_wedge = q > rat_i(4) && v < -&q;
            let classified = classify_region(&q, &v) == Region::Unsupported;
            check!(
                9,
                in_wedge == classified,
                "wedge mismatch at ({q}, {v}): inequality says {in_wedge}"
            );
            if in_wedge {
                wedge_cells += 1;
            }
        }
    }
    check!(9, wedge_cells > 0, "grid never touches the wedge");
    report(9, &format!("three refusals, wedge matches on {wedge_cells} grid cells"), started);
}

#[test]
fn criterion_10_determinism() {
    let started = Instant::now();
    let render = |results: &[(&str, Rat, Rat, DensityOutcome)]| -> String {
        let mut out = String::new();
        for (name, q0, v0, outcome) in results {
            out.push_str(&format!("== {name} ({q0}, {v0})\n"));
            match outcome {
                DensityOutcome::Certified(cert) => out.push_str(&cert.to_json()),
                DensityOutcome::Exhausted(msg) => out.push_str(msg),
            }
            out.push('\n');
        }
        out
    };
    let first = render(&density_run(10));
    let second = render(&density_run(10));
    check!(10, first == second, "two density runs produced different bytes");
    report(10, &format!("{} identical certificate bytes", first.len()), started);
}
