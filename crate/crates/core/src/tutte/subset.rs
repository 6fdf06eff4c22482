//! Raw subset-expansion evaluation of Z.

use super::dsu::RollbackDsu;
use crate::algebra::poly::UniPoly;
use crate::algebra::rat::Rat;
use crate::graph::multigraph::MultiGraph;
use num_traits::{One, Zero};

/// Default cap on edge count for 2^|E| subset enumeration.
pub const DEFAULT_SUBSET_BUDGET: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    BudgetExceeded { edges: usize, budget: usize },
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalError::BudgetExceeded { edges, budget } => {
                write!(f, "graph has {edges} edges, above the subset budget {budget}")
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// Coefficients of Z as a polynomial in q: index k collects the product
/// weights of all edge subsets with exactly k components.
fn component_coefficients(g: &MultiGraph) -> Vec<Rat> {
    let n = g.vertex_count();
    let mut coeffs = vec![Rat::zero(); n + 1];
    let mut dsu = RollbackDsu::new(n);
    let mut prod = vec![Rat::one()];
    rec(g.edges(), 0, &mut dsu, &mut prod, &mut coeffs);
    coeffs
}

fn rec(
    edges: &[(usize, usize, Rat)],
    i: usize,
    dsu: &mut RollbackDsu,
    prod: &mut Vec<Rat>,
    coeffs: &mut [Rat],
) {
    if i == edges.len() {
        let k = dsu.components();
        let top = prod.last().unwrap();
        coeffs[k] = &coeffs[k] + top;
        return;
    }
    rec(edges, i + 1, dsu, prod, coeffs);
    let (u, v, w) = &edges[i];
    if w.is_zero() {
        return;
    }
    let cp = dsu.checkpoint();
    dsu.union(*u, *v);
    let next = prod.last().unwrap() * w;
    prod.push(next);
    rec(edges, i + 1, dsu, prod, coeffs);
    prod.pop();
    dsu.rollback_to(cp);
}

fn check_budget(g: &MultiGraph, budget: usize) -> Result<(), EvalError> {
    if g.edge_count() > budget {
        Err(EvalError::BudgetExceeded { edges: g.edge_count(), budget })
    } else {
        Ok(())
    }
}

/// Z as a polynomial in q, weights taken from the graph's edges.
pub fn z_poly_q(g: &MultiGraph) -> Result<UniPoly, EvalError> {
    z_poly_q_with_budget(g, DEFAULT_SUBSET_BUDGET)
}

pub fn z_poly_q_with_budget(g: &MultiGraph, budget: usize) -> Result<UniPoly, EvalError> {
    check_budget(g, budget)?;
    Ok(UniPoly::new(component_coefficients(g)))
}

/// Exact value of Z at rational q by enumerating all 2^|E| edge subsets.
pub fn z_subset(g: &MultiGraph, q: &Rat) -> Result<Rat, EvalError> {
    z_subset_with_budget(g, q, DEFAULT_SUBSET_BUDGET)
}

pub fn z_subset_with_budget(g: &MultiGraph, q: &Rat, budget: usize) -> Result<Rat, EvalError> {
    check_budget(g, budget)?;
    Ok(UniPoly::new(component_coefficients(g)).eval(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat_i, Rat};

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> MultiGraph {
        let mut g = MultiGraph::new(n);
        for (u, v, w) in edges {
            g.add_edge(*u, *v, rat_i(*w));
        }
        g
    }

    #[test]
    fn single_edge() {
        let g = graph(2, &[(0, 1, 2)]);
        assert_eq!(z_subset(&g, &rat_i(3)).unwrap(), rat_i(15));
        assert_eq!(z_poly_q(&g).unwrap(), UniPoly::from_ints(&[0, 2, 1]));
    }

    #[test]
    fn loop_contributes_one_plus_v() {
        let g = graph(1, &[(0, 0, 2)]);
        assert_eq!(z_subset(&g, &rat_i(3)).unwrap(), rat_i(9));
        assert_eq!(z_poly_q(&g).unwrap(), UniPoly::from_ints(&[0, 3]));
    }

    #[test]
    fn triangle_matches_hand_enumeration() {
        // All weights v: q^3 + 3q^2 v + 3q v^2 + q v^3; at v = -1 this is
        // the chromatic polynomial q(q-1)(q-2).
        let g = graph(3, &[(0, 1, -1), (1, 2, -1), (0, 2, -1)]);
        assert_eq!(z_poly_q(&g).unwrap(), UniPoly::from_ints(&[0, 2, -3, 1]));
        assert_eq!(z_subset(&g, &rat_i(2)).unwrap(), Rat::zero());
        assert_eq!(z_subset(&g, &rat_i(3)).unwrap(), rat_i(6));
    }

    #[test]
    fn dipole_three_edges() {
        let g = graph(2, &[(0, 1, 2), (0, 1, 2), (0, 1, 2)]);
        // q^2 + 3qv + 3qv^2 + qv^3 at v=2: q^2 + 26q.
        assert_eq!(z_poly_q(&g).unwrap(), UniPoly::from_ints(&[0, 26, 1]));
    }

    #[test]
    fn edgeless_and_empty() {
        assert_eq!(z_poly_q(&MultiGraph::new(4)).unwrap(), UniPoly::from_ints(&[0, 0, 0, 0, 1]));
        assert_eq!(z_subset(&MultiGraph::new(0), &rat_i(7)).unwrap(), Rat::one());
    }

    #[test]
    fn budget_is_enforced() {
        let mut g = MultiGraph::new(2);
        for _ in 0..25 {
            g.add_edge(0, 1, rat_i(1));
        }
        assert_eq!(
            z_subset(&g, &rat_i(2)).unwrap_err(),
            EvalError::BudgetExceeded { edges: 25, budget: 24 }
        );
        let mut small = MultiGraph::new(2);
        for _ in 0..10 {
            small.add_edge(0, 1, rat_i(1));
        }
        assert_eq!(
            z_subset_with_budget(&small, &rat_i(2), 9).unwrap_err(),
            EvalError::BudgetExceeded { edges: 10, budget: 9 }
        );
        assert!(z_subset_with_budget(&small, &rat_i(2), 10).is_ok());
    }
}
