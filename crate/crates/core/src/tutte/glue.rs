//! The gluing factorization: Z of two gadgets sharing exactly their
//! terminal pair factors through the effective weight of one side.

use super::split::split_subset;
use super::subset::{z_subset_with_budget, EvalError, DEFAULT_SUBSET_BUDGET};
use crate::algebra::rat::Rat;
use crate::graph::multigraph::{MultiGraph, TwoTerminalGraph};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlueError {
    /// The factorization prefactor 1/(q(q-1)) does not exist.
    PoleAt(Rat),
    /// The effective weight of F is undefined at this q.
    DegenerateEffectiveWeight,
    Eval(EvalError),
}

impl std::fmt::Display for GlueError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlueError::PoleAt(q) => write!(f, "factorization undefined at q = {q}"),
            GlueError::DegenerateEffectiveWeight => {
                write!(f, "effective weight denominator vanishes at this q")
            }
            GlueError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GlueError {}

impl From<EvalError> for GlueError {
    fn from(e: EvalError) -> Self {
        GlueError::Eval(e)
    }
}

/// F and H joined so that they share exactly the two terminals: H's
/// terminal `hx` maps to F's x, `hy` to F's y, all other H vertices are
/// appended after F's.
pub fn glue_at_terminals(
    f: &TwoTerminalGraph,
    h: &MultiGraph,
    hx: usize,
    hy: usize,
) -> MultiGraph {
    assert!(hx < h.vertex_count() && hy < h.vertex_count() && hx != hy);
    let base = f.graph().vertex_count();
    let mut g = f.graph().clone();
    let mut map = vec![usize::MAX; h.vertex_count()];
    map[hx] = f.x();
    map[hy] = f.y();
    let mut next = base;
    for u in 0..h.vertex_count() {
        if map[u] == usize::MAX {
            map[u] = next;
            next += 1;
        }
    }
    for _ in base..next {
        g.add_vertex();
    }
    for (u, v, w) in h.edges() {
        g.add_edge(map[*u], map[*v], w.clone());
    }
    g
}

/// Checks Z_G = Z_{F+xy}(-1) Z_{H+xy}(v_F) / (q(q-1)) exactly at q, where
/// G glues F and H along the terminals and v_F is F's effective weight.
/// H may be a dipole; its terminals are `hx`, `hy`.
pub fn verify_gluing_factorization(
    f: &TwoTerminalGraph,
    h: &MultiGraph,
    hx: usize,
    hy: usize,
    q: &Rat,
) -> Result<bool, GlueError> {
    verify_gluing_factorization_with_budget(f, h, hx, hy, q, DEFAULT_SUBSET_BUDGET)
}

pub fn verify_gluing_factorization_with_budget(
    f: &TwoTerminalGraph,
    h: &MultiGraph,
    hx: usize,
    hy: usize,
    q: &Rat,
    budget: usize,
) -> Result<bool, GlueError> {
    if q.is_zero() || q.is_one() {
        return Err(GlueError::PoleAt(q.clone()));
    }
    let sp = split_subset(f.graph(), f.x(), f.y(), budget)?;
    let d_at_q = sp.z_diff.eval(q);
    if d_at_q.is_zero() {
        return Err(GlueError::DegenerateEffectiveWeight);
    }
    let v_f = &(q * &sp.z_same.eval(q)) / &d_at_q;

    let glued = glue_at_terminals(f, h, hx, hy);
    let lhs = z_subset_with_budget(&glued, q, budget)?;

    let f_plus = sp.z_plus_edge_neg_one().eval(q);
    let mut h_plus = h.clone();
    h_plus.add_edge(hx, hy, v_f);
    let h_val = z_subset_with_budget(&h_plus, q, budget)?;
    let prefactor = q * &(q - &Rat::one());
    Ok(&lhs * &prefactor == &f_plus * &h_val)
}
