//! Z split by terminal connectivity: the same/diff decomposition that
//! underlies effective weights and the gluing factorization.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::dsu::RollbackDsu;
use super::subset::EvalError;
use crate::algebra::poly::UniPoly;
use crate::algebra::rat::Rat;
use crate::algebra::ratfn::RatFn;
use crate::graph::leaves::LeafKind;
use crate::graph::multigraph::{MultiGraph, TwoTerminalGraph};
use crate::graph::term::GadgetTerm;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Z of a terminal-marked graph split into the subsets joining the
/// terminals (`z_same`) and the rest (`z_diff`), both polynomials in q.
///
/// Every diff subset leaves the terminals in different components, so each
/// of its monomials has q-degree at least 2 and `z_diff` is divisible by q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitZ {
    pub z_same: UniPoly,
    pub z_diff: UniPoly,
}

impl SplitZ {
    /// Split of a single edge of weight `w` between the terminals.
    pub fn edge(w: &Rat) -> SplitZ {
        SplitZ {
            z_same: UniPoly::new(vec![Rat::zero(), w.clone()]),
            z_diff: UniPoly::from_ints(&[0, 0, 1]),
        }
    }

    /// Split of the series join: the two pieces share one new internal
    /// vertex, terminals are the outer ends.
    pub fn series(&self, other: &SplitZ) -> SplitZ {
        let q = UniPoly::x();
        let s1s2 = &self.z_same * &other.z_same;
        let z1 = self.z_total();
        let z2 = other.z_total();
        let z_same = s1s2.exact_div(&q);
        let z_diff = (&(&z1 * &z2) - &s1s2).exact_div(&q);
        SplitZ { z_same, z_diff }
    }

    /// Split of the parallel join: both pieces share both terminals.
    pub fn parallel(&self, other: &SplitZ) -> SplitZ {
        let q = UniPoly::x();
        let q2 = &q * &q;
        let s1s2 = &self.z_same * &other.z_same;
        let cross = &(&self.z_same * &other.z_diff) + &(&self.z_diff * &other.z_same);
        let z_same = &s1s2.exact_div(&q) + &cross.exact_div(&q2);
        let z_diff = (&self.z_diff * &other.z_diff).exact_div(&q2);
        SplitZ { z_same, z_diff }
    }

    pub fn z_total(&self) -> UniPoly {
        &self.z_same + &self.z_diff
    }

    /// Z of the graph with terminals identified: z_same + z_diff/q.
    pub fn z_xy(&self) -> UniPoly {
        &self.z_same + &self.z_diff.exact_div(&UniPoly::x())
    }

    /// Z of the graph with an extra terminal edge of weight -1:
    /// z_diff (q-1)/q.
    pub fn z_plus_edge_neg_one(&self) -> UniPoly {
        let qm1 = UniPoly::from_ints(&[-1, 1]);
        &self.z_diff.exact_div(&UniPoly::x()) * &qm1
    }

    /// The effective weight q z_same / z_diff as a rational function of q.
    pub fn effective_weight(&self) -> RatFn {
        RatFn::new(&self.z_same * &UniPoly::x(), self.z_diff.clone())
    }
}

/// Scalar same/diff split at a fixed rational q. Mirrors [`SplitZ`] with
/// numbers instead of polynomials; total cost is linear in term size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitScalar {
    pub s: Rat,
    pub d: Rat,
}

impl SplitScalar {
    pub fn edge(w: &Rat, q: &Rat) -> SplitScalar {
        SplitScalar { s: q * w, d: q * q }
    }

    pub fn series(&self, other: &SplitScalar, q: &Rat) -> SplitScalar {
        let s1s2 = &self.s * &other.s;
        let z1 = &self.s + &self.d;
        let z2 = &other.s + &other.d;
        SplitScalar { s: &s1s2 / q, d: (&(&z1 * &z2) - &s1s2) / q }
    }

    pub fn parallel(&self, other: &SplitScalar, q: &Rat) -> SplitScalar {
        let q2 = q * q;
        let s1s2 = &self.s * &other.s;
        let cross = &(&self.s * &other.d) + &(&self.d * &other.s);
        SplitScalar { s: &(&s1s2 / q) + &(&cross / &q2), d: &(&self.d * &other.d) / &q2 }
    }

    pub fn z_total(&self) -> Rat {
        &self.s + &self.d
    }
}

/// Subset counts of a uniform-weight terminal-marked graph, indexed by
/// component count k and subset size j. Weight-independent, so cacheable
/// per leaf shape.
#[derive(Debug, Clone)]
pub struct SplitCounts {
    pub vertices: usize,
    pub edges: usize,
    pub same: Vec<Vec<u64>>,
    pub diff: Vec<Vec<u64>>,
}

/// Enumerates all edge subsets of `g`, counting by (terminal connectivity,
/// component count, subset size). Edge weights are ignored.
pub fn split_counts(g: &MultiGraph, x: usize, y: usize) -> SplitCounts {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut counts = SplitCounts {
        vertices: n,
        edges: m,
        same: vec![vec![0; m + 1]; n + 1],
        diff: vec![vec![0; m + 1]; n + 1],
    };
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|(u, v, _)| (*u, *v)).collect();
    let mut dsu = RollbackDsu::new(n);
    fn walk(
        pairs: &[(usize, usize)],
        i: usize,
        j: usize,
        dsu: &mut RollbackDsu,
        x: usize,
        y: usize,
        counts: &mut SplitCounts,
    ) {
        if i == pairs.len() {
            let k = dsu.components();
            if dsu.same(x, y) {
                counts.same[k][j] += 1;
            } else {
                counts.diff[k][j] += 1;
            }
            return;
        }
        walk(pairs, i + 1, j, dsu, x, y, counts);
        let cp = dsu.checkpoint();
        dsu.union(pairs[i].0, pairs[i].1);
        walk(pairs, i + 1, j + 1, dsu, x, y, counts);
        dsu.rollback_to(cp);
    }
    walk(&pairs, 0, 0, &mut dsu, x, y, &mut counts);
    counts
}

fn assemble(table: &[Vec<u64>], wpow: &[Rat]) -> UniPoly {
    let coeffs: Vec<Rat> = table
        .iter()
        .map(|row| {
            let mut c = Rat::zero();
            for (j, count) in row.iter().enumerate() {
                if *count != 0 {
                    c = &c + &(&wpow[j] * &Rat::from_integer(BigInt::from(*count)));
                }
            }
            c
        })
        .collect();
    UniPoly::new(coeffs)
}

fn weight_powers(w: &Rat, up_to: usize) -> Vec<Rat> {
    let mut wpow = Vec::with_capacity(up_to + 1);
    wpow.push(Rat::one());
    for _ in 0..up_to {
        wpow.push(wpow.last().unwrap() * w);
    }
    wpow
}

fn leaf_counts(kind: LeafKind) -> std::sync::Arc<SplitCounts> {
    static CACHE: OnceLock<Mutex<HashMap<LeafKind, std::sync::Arc<SplitCounts>>>> =
        OnceLock::new();
    // A stretched Petersen leaf reuses the unstretched template's counts;
    // its split comes from the edge-substitution identity, never from
    // enumerating the subdivided graph.
    let key = match kind {
        LeafKind::PetersenMinusEdge(_) => LeafKind::PetersenMinusEdge(1),
        other => other,
    };
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    // Compute outside the lock: K7 minus an edge enumerates 2^20 subsets.
    let (n, edges) = key.edge_list();
    let mut g = MultiGraph::new(n);
    for (u, v) in edges {
        g.add_edge(u, v, Rat::one());
    }
    let counts = std::sync::Arc::new(split_counts(&g, 0, 1));
    cache.lock().unwrap().entry(key).or_insert(counts).clone()
}

/// Split of a template with every edge replaced by the same two-terminal
/// gadget. Replacing one edge e of a terminal-marked graph H by a gadget
/// with split (S_g, D_g) gives
/// Z_{H[e->g]} = (D_g / q^2) Z_{H minus e} + (S_g / q) Z_{H contract e},
/// because a gadget state disconnecting its terminals contributes its two
/// components to whatever blocks the endpoints of e already sit in. With
/// every edge replaced and the counts c[k][j] of the template, each of the
/// same and diff parts assembles to
/// q^{-2E} sum_{k,j} c[k][j] q^{k+j} S_g^j D_g^{E-j}.
fn substituted_split(counts: &SplitCounts, gadget: &SplitZ) -> SplitZ {
    let m = counts.edges;
    let mut spow = vec![UniPoly::one()];
    let mut dpow = vec![UniPoly::one()];
    for i in 1..=m {
        spow.push(&spow[i - 1] * &gadget.z_same);
        dpow.push(&dpow[i - 1] * &gadget.z_diff);
    }
    let x = UniPoly::x();
    let mut xpow = vec![UniPoly::one()];
    for i in 1..=(counts.vertices + m).max(2 * m) {
        xpow.push(&xpow[i - 1] * &x);
    }
    let shift = xpow[2 * m].clone();
    let assemble_sub = |table: &[Vec<u64>]| -> UniPoly {
        let mut acc = UniPoly::zero();
        for j in 0..=m {
            let mut col = UniPoly::zero();
            for (k, row) in table.iter().enumerate() {
                if row[j] != 0 {
                    let c = Rat::from_integer(BigInt::from(row[j]));
                    col = &col + &xpow[k + j].scale(&c);
                }
            }
            if col.is_zero() {
                continue;
            }
            let base = &spow[j] * &dpow[m - j];
            acc = &acc + &(&col * &base);
        }
        acc.exact_div(&shift)
    };
    SplitZ {
        z_same: assemble_sub(&counts.same),
        z_diff: assemble_sub(&counts.diff),
    }
}

fn path_split(w: &Rat, len: usize) -> SplitZ {
    let e = SplitZ::edge(w);
    let mut path = e.clone();
    for _ in 1..len {
        path = path.series(&e);
    }
    path
}

/// Split of a named leaf with uniform weight `w`, via cached subset counts.
pub fn leaf_split(kind: LeafKind, w: &Rat) -> SplitZ {
    let counts = leaf_counts(kind);
    if let LeafKind::PetersenMinusEdge(m) = kind {
        if m > 1 {
            return substituted_split(&counts, &path_split(w, m));
        }
    }
    let wpow = weight_powers(w, counts.edges);
    SplitZ { z_same: assemble(&counts.same, &wpow), z_diff: assemble(&counts.diff, &wpow) }
}

pub fn leaf_split_scalar(kind: LeafKind, w: &Rat, q: &Rat) -> SplitScalar {
    if let LeafKind::PetersenMinusEdge(m) = kind {
        if m > 1 {
            let counts = leaf_counts(kind);
            let e = SplitScalar::edge(w, q);
            let mut path = e.clone();
            for _ in 1..m {
                path = path.series(&e, q);
            }
            let edges = counts.edges;
            let mut spow = vec![Rat::one()];
            let mut dpow = vec![Rat::one()];
            for i in 1..=edges {
                spow.push(&spow[i - 1] * &path.s);
                dpow.push(&dpow[i - 1] * &path.d);
            }
            let mut qpow = vec![Rat::one()];
            for i in 1..=(counts.vertices + edges).max(2 * edges) {
                qpow.push(&qpow[i - 1] * q);
            }
            let shift = &qpow[2 * edges];
            let assemble_scalar = |table: &[Vec<u64>]| -> Rat {
                let mut acc = Rat::zero();
                for j in 0..=edges {
                    let mut col = Rat::zero();
                    for (k, row) in table.iter().enumerate() {
                        if row[j] != 0 {
                            let c = Rat::from_integer(BigInt::from(row[j]));
                            col = &col + &(&qpow[k + j] * &c);
                        }
                    }
                    if col.is_zero() {
                        continue;
                    }
                    acc = &acc + &(&col * &(&spow[j] * &dpow[edges - j]));
                }
                &acc / shift
            };
            return SplitScalar {
                s: assemble_scalar(&counts.same),
                d: assemble_scalar(&counts.diff),
            };
        }
    }
    let counts = leaf_counts(kind);
    let wpow = weight_powers(w, counts.edges);
    let same = assemble(&counts.same, &wpow);
    let diff = assemble(&counts.diff, &wpow);
    SplitScalar { s: same.eval(q), d: diff.eval(q) }
}

/// Split of a gadget term by structural recursion: single edges and leaf
/// graphs at the base, the series/parallel recurrences above the base.
pub fn term_split(t: &GadgetTerm) -> SplitZ {
    match t {
        GadgetTerm::Edge(w) => SplitZ::edge(w),
        GadgetTerm::Opaque(leaf) => leaf_split(leaf.kind, &leaf.weight),
        GadgetTerm::Series(cs) => {
            let mut acc = term_split(&cs[0]);
            for c in &cs[1..] {
                acc = acc.series(&term_split(c));
            }
            acc
        }
        GadgetTerm::Parallel(cs) => {
            let mut acc = term_split(&cs[0]);
            for c in &cs[1..] {
                acc = acc.parallel(&term_split(c));
            }
            acc
        }
    }
}

/// Scalar analogue of [`term_split`] at fixed nonzero q.
pub fn term_split_scalar(t: &GadgetTerm, q: &Rat) -> SplitScalar {
    assert!(!q.is_zero(), "scalar split needs q != 0");
    match t {
        GadgetTerm::Edge(w) => SplitScalar::edge(w, q),
        GadgetTerm::Opaque(leaf) => leaf_split_scalar(leaf.kind, &leaf.weight, q),
        GadgetTerm::Series(cs) => {
            let mut acc = term_split_scalar(&cs[0], q);
            for c in &cs[1..] {
                acc = acc.series(&term_split_scalar(c, q), q);
            }
            acc
        }
        GadgetTerm::Parallel(cs) => {
            let mut acc = term_split_scalar(&cs[0], q);
            for c in &cs[1..] {
                acc = acc.parallel(&term_split_scalar(c, q), q);
            }
            acc
        }
    }
}

/// Split of an arbitrary terminal-marked multigraph by subset expansion;
/// weights come from the graph.
pub fn split_subset(
    g: &MultiGraph,
    x: usize,
    y: usize,
    budget: usize,
) -> Result<SplitZ, EvalError> {
    if g.edge_count() > budget {
        return Err(EvalError::BudgetExceeded { edges: g.edge_count(), budget });
    }
    let n = g.vertex_count();
    let mut same = vec![Rat::zero(); n + 1];
    let mut diff = vec![Rat::zero(); n + 1];
    let mut dsu = RollbackDsu::new(n);
    let mut prod = vec![Rat::one()];
    fn walk(
        edges: &[(usize, usize, Rat)],
        i: usize,
        dsu: &mut RollbackDsu,
        prod: &mut Vec<Rat>,
        x: usize,
        y: usize,
        same: &mut [Rat],
        diff: &mut [Rat],
    ) {
        if i == edges.len() {
            let k = dsu.components();
            let top = prod.last().unwrap();
            if dsu.same(x, y) {
                same[k] = &same[k] + top;
            } else {
                diff[k] = &diff[k] + top;
            }
            return;
        }
        walk(edges, i + 1, dsu, prod, x, y, same, diff);
        let (u, v, w) = &edges[i];
        if w.is_zero() {
            return;
        }
        let cp = dsu.checkpoint();
        dsu.union(*u, *v);
        let next = prod.last().unwrap() * w;
        prod.push(next);
        walk(edges, i + 1, dsu, prod, x, y, same, diff);
        prod.pop();
        dsu.rollback_to(cp);
    }
    walk(g.edges(), 0, &mut dsu, &mut prod, x, y, &mut same, &mut diff);
    Ok(SplitZ { z_same: UniPoly::new(same), z_diff: UniPoly::new(diff) })
}

/// Split of a two-terminal graph, subset expansion under the default budget.
pub fn z_split(f: &TwoTerminalGraph) -> Result<SplitZ, EvalError> {
    split_subset(f.graph(), f.x(), f.y(), super::subset::DEFAULT_SUBSET_BUDGET)
}
