//! Command line front end for the zero-certification pipeline.
//!
//! Exit codes follow the certification contract rather than the usual
//! sysexits: `find-zero` and `pair` exit 0 on success, 2 when the target
//! lies outside the supported regions, and 3 when a bounded search gave
//! up; `verify` exits 0 for a valid certificate, 1 for an invalid one,
//! and 4 when the file cannot be read as a certificate at all.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use tutte_zeros::regions::v_diamond;
use tutte_zeros::{
    classify_region, complementary_pair, effective_weight_at, find_zero, parse_rational, rat,
    rat_i, verify_certificate_report, FindZeroError, ForgeError, Rat, Region, SearchBudget,
    ZeroCertificate,
};

fn parse_rat(s: &str) -> Result<Rat, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Caps for the bounded gadget searches. The defaults match the library
/// defaults; raising them trades time for coverage.
#[derive(Args, Debug)]
struct BudgetArgs {
    /// Longest path scanned when hunting B-type path gadgets.
    #[arg(long = "budget-path-length", default_value_t = SearchBudget::default().max_path_length)]
    path_length: usize,

    /// Size cap for terms in the series-parallel closure search.
    #[arg(long = "budget-sp-size", default_value_t = SearchBudget::default().max_sp_term_size)]
    sp_size: usize,

    /// Largest n for which K_n minus an edge is tried as a leaf.
    #[arg(long = "budget-kn", default_value_t = SearchBudget::default().max_kn)]
    kn: usize,

    /// Parallel multiplicity cap inside the closure search.
    #[arg(long = "budget-parallel-mult", default_value_t = SearchBudget::default().max_parallel_mult)]
    parallel_mult: usize,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_path_length: self.path_length,
            max_sp_term_size: self.sp_size,
            max_kn: self.kn,
            max_parallel_mult: self.parallel_mult,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "tutte-zeros",
    version,
    about = "Exact certificates for real zeros of random-cluster partition functions",
    long_about = "Classifies rational points (q, v), builds complementary gadget pairs, and \
                  certifies real zeros of Z_G(., v) near a target q0 by an exact sign-change \
                  bracket on an explicitly constructed graph.\n\n\
                  Rational arguments accept \"p/q\" and finite decimal literals; both are read \
                  exactly, so --eps 0.1 means exactly 1/10.\n\n\
                  Exit codes: find-zero and pair use 0 = certified/constructed, 2 = target \
                  unsupported, 3 = search exhausted or construction failed; verify uses 0 = \
                  valid, 1 = invalid, 4 = malformed file."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Classify a rational point (q, v) in the region map.
    ///
    /// For 0 < q < 32/27 also prints exact isolating brackets for the
    /// two branch values v+ and v- of the zero-free lens at that q.
    Classify {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        q: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        v: Rat,
    },

    /// Construct a complementary gadget pair at an interior point (q, v).
    Pair {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        q: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        v: Rat,
        #[command(flatten)]
        budget: BudgetArgs,
    },

    /// Certify a real zero of Z_G(., v) within eps of q0.
    ///
    /// Prints the certificate JSON to stdout (or --out) and a one-line
    /// summary with the bracket and witness size to stderr.
    FindZero {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        q0: Rat,
        #[arg(long = "v", visible_alias = "v0", value_parser = parse_rat, allow_hyphen_values = true)]
        v0: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        eps: Rat,
        /// Write the certificate JSON to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 3 instead of certifying with a non-planar gadget.
        #[arg(long)]
        planar_only: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },

    /// Re-verify a certificate file independently of its producer.
    Verify {
        /// Path to a certificate JSON file.
        cert: PathBuf,
        /// Also recompute Z on the whole witness graph (needs <= 24 edges).
        #[arg(long)]
        exhaustive: bool,
    },

    /// Run find-zero over a rational grid and emit one CSV row per point.
    ///
    /// Rows appear in row-major order (q outermost); a per-region tally
    /// of certified points goes to stderr.
    Sweep {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        q_min: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        q_max: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        v_min: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        v_max: Rat,
        /// Grid points per axis, endpoints included.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        eps: Rat,
        /// Write the CSV to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },

    /// Emit the classification of a rational grid as CSV for plotting.
    RegionMap {
        /// Grid points per axis, endpoints included.
        #[arg(long, default_value_t = 50)]
        resolution: usize,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, default_value = "-2")]
        q_min: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, default_value = "5")]
        q_max: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, default_value = "-6")]
        v_min: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, default_value = "1")]
        v_max: Rat,
        /// Write the CSV to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Evenly spaced rationals from min to max inclusive. Exact arithmetic
/// keeps repeated runs byte-identical.
fn linspace(min: &Rat, max: &Rat, steps: usize) -> Vec<Rat> {
    if steps <= 1 {
        return vec![min.clone()];
    }
    let step = &(max - min) / &rat_i(steps as i64 - 1);
    (0..steps).map(|i| min + &(&rat_i(i as i64) * &step)).collect()
}

/// Maps a find-zero failure onto the exit contract: 2 when the target
/// itself is out of reach, 3 when a search gave up or an internal step
/// failed.
fn find_zero_exit(e: &FindZeroError) -> u8 {
    match e {
        FindZeroError::UnsupportedRegion { .. } | FindZeroError::NotStarredRegion { .. } => 2,
        FindZeroError::Gadget(ForgeError::NotInteriorPoint { .. }) => 2,
        _ => 3,
    }
}

fn forge_exit(e: &ForgeError) -> u8 {
    match e {
        ForgeError::NotInteriorPoint { .. } => 2,
        _ => 3,
    }
}

fn witness_edges(cert: &ZeroCertificate) -> usize {
    cert.s * cert.a_term.realized_edge_count() + cert.t * cert.b_term.realized_edge_count()
}

fn cmd_classify(q: &Rat, v: &Rat) -> u8 {
    let region = classify_region(q, v);
    match region {
        Region::Unsupported => println!("Unsupported (open: q>4, v<-q)"),
        other => println!("{other}"),
    }
    if q > &rat(0, 1) && q < &rat(32, 27) {
        // Bracket width 10^-6 is plenty for reading off the lens and
        // keeps the endpoint denominators small enough to print.
        let d = v_diamond(q, &rat(1, 1_000_000)).expect("q checked inside (0, 32/27)");
        println!("v_plus in [{}, {}]", d.v_plus.lo, d.v_plus.hi);
        println!("v_minus in [{}, {}]", d.v_minus.lo, d.v_minus.hi);
    }
    0
}

fn cmd_pair(q: &Rat, v: &Rat, budget: &SearchBudget) -> u8 {
    let pair = match complementary_pair(q, v, budget) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("pair construction failed: {e}");
            return forge_exit(&e);
        }
    };
    println!("region: {}", classify_region(q, v));
    let wa = effective_weight_at(&pair.a, q).expect("pair weight defined at its own point");
    let wb = effective_weight_at(&pair.b, q).expect("pair weight defined at its own point");
    println!("a: {}", pair.a);
    println!("   type {}  v_A = {}  edges = {}", pair.a_type, wa, pair.a.realized_edge_count());
    println!("b: {}", pair.b);
    println!("   type {}  v_B = {}  edges = {}", pair.b_type, wb, pair.b.realized_edge_count());
    println!("planar: {}", pair.planar);
    0
}

fn cmd_find_zero(
    q0: &Rat,
    v0: &Rat,
    eps: &Rat,
    out: Option<&PathBuf>,
    planar_only: bool,
    budget: &SearchBudget,
) -> u8 {
    if eps <= &rat(0, 1) {
        eprintln!("eps must be positive, got {eps}");
        return 2;
    }
    let cert = match find_zero(q0, v0, eps, budget) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("find-zero failed: {e}");
            return find_zero_exit(&e);
        }
    };
    if planar_only && !(cert.a_term.is_planar() && cert.b_term.is_planar()) {
        eprintln!("witness pair uses a non-planar gadget and --planar-only is set");
        return 3;
    }
    let json = cert.to_json();
    if let Some(path) = out {
        if let Err(e) = fs::write(path, &json) {
            eprintln!("cannot write {}: {e}", path.display());
            return 1;
        }
    } else {
        println!("{json}");
    }
    let kind = if cert.dual { "dual certificate" } else { "certificate" };
    eprintln!(
        "{kind}: zero of Z(., {}) in [{}, {}] (width {}), s = {}, t = {}, witness edges = {}, achieved distance = {}",
        cert.v0,
        cert.bracket.lo,
        cert.bracket.hi,
        cert.bracket.width(),
        cert.s,
        cert.t,
        witness_edges(&cert),
        cert.achieved_distance,
    );
    0
}

fn cmd_verify(path: &PathBuf, exhaustive: bool) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", path.display());
            return 4;
        }
    };
    let cert = match ZeroCertificate::from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("malformed certificate: {e}");
            return 4;
        }
    };
    match verify_certificate_report(&cert, exhaustive) {
        Ok(()) => {
            println!(
                "valid: zero of Z(., {}) in [{}, {}], s = {}, t = {}, witness edges = {}",
                cert.v0,
                cert.bracket.lo,
                cert.bracket.hi,
                cert.s,
                cert.t,
                witness_edges(&cert),
            );
            0
        }
        Err(msg) => {
            println!("INVALID: {msg}");
            1
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    q_min: &Rat,
    q_max: &Rat,
    v_min: &Rat,
    v_max: &Rat,
    steps: usize,
    eps: &Rat,
    out: Option<&PathBuf>,
    budget: &SearchBudget,
) -> u8 {
    if q_min > q_max || v_min > v_max || steps == 0 {
        eprintln!("empty grid: need q_min <= q_max, v_min <= v_max, steps >= 1");
        return 2;
    }
    if eps <= &rat(0, 1) {
        eprintln!("eps must be positive, got {eps}");
        return 2;
    }
    let qs = linspace(q_min, q_max, steps);
    let vs = linspace(v_min, v_max, steps);
    let mut csv =
        String::from("q0,v0,region,outcome,achieved_distance,s,t,witness_edge_count,wall_time_ms\n");
    let mut tally: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for q in &qs {
        for v in &vs {
            let region = classify_region(q, v);
            let started = Instant::now();
            let res = find_zero(q, v, eps, budget);
            let ms = started.elapsed().as_millis();
            let (outcome, dist, s, t, edges) = match &res {
                Ok(c) => (
                    "certified",
                    c.achieved_distance.to_string(),
                    c.s.to_string(),
                    c.t.to_string(),
                    witness_edges(c).to_string(),
                ),
                Err(e) => {
                    let outcome = if find_zero_exit(e) == 2 { "unsupported" } else { "exhausted" };
                    (outcome, String::new(), String::new(), String::new(), String::new())
                }
            };
            csv.push_str(&format!("{q},{v},{region},{outcome},{dist},{s},{t},{edges},{ms}\n"));
            let entry = tally.entry(region.to_string()).or_insert((0, 0));
            entry.1 += 1;
            if res.is_ok() {
                entry.0 += 1;
            }
        }
    }
    if let Some(path) = out {
        if let Err(e) = fs::write(path, &csv) {
            eprintln!("cannot write {}: {e}", path.display());
            return 1;
        }
    } else {
        print!("{csv}");
    }
    for (region, (ok, total)) in &tally {
        eprintln!("{region}: {ok}/{total} certified");
    }
    0
}

fn cmd_region_map(
    resolution: usize,
    q_min: &Rat,
    q_max: &Rat,
    v_min: &Rat,
    v_max: &Rat,
    out: Option<&PathBuf>,
) -> u8 {
    if q_min > q_max || v_min > v_max || resolution == 0 {
        eprintln!("empty grid: need q_min <= q_max, v_min <= v_max, resolution >= 1");
        return 2;
    }
    let qs = linspace(q_min, q_max, resolution);
    let vs = linspace(v_min, v_max, resolution);
    let mut csv = String::from("q,v,region\n");
    for q in &qs {
        for v in &vs {
            csv.push_str(&format!("{q},{v},{}\n", classify_region(q, v)));
        }
    }
    if let Some(path) = out {
        if let Err(e) = fs::write(path, &csv) {
            eprintln!("cannot write {}: {e}", path.display());
            return 1;
        }
    } else {
        print!("{csv}");
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.cmd {
        Cmd::Classify { q, v } => cmd_classify(q, v),
        Cmd::Pair { q, v, budget } => cmd_pair(q, v, &budget.budget()),
        Cmd::FindZero { q0, v0, eps, out, planar_only, budget } => {
            cmd_find_zero(q0, v0, eps, out.as_ref(), *planar_only, &budget.budget())
        }
        Cmd::Verify { cert, exhaustive } => cmd_verify(cert, *exhaustive),
        Cmd::Sweep { q_min, q_max, v_min, v_max, steps, eps, out, budget } => cmd_sweep(
            q_min,
            q_max,
            v_min,
            v_max,
            *steps,
            eps,
            out.as_ref(),
            &budget.budget(),
        ),
        Cmd::RegionMap { resolution, q_min, q_max, v_min, v_max, out } => {
            cmd_region_map(*resolution, q_min, q_max, v_min, v_max, out.as_ref())
        }
    };
    ExitCode::from(code)
}
