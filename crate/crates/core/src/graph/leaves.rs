//! Named opaque gadget leaves: Petersen minus an edge and K_n minus an edge.

use super::multigraph::{MultiGraph, TwoTerminalGraph};
use super::term::GadgetTerm;
use crate::algebra::rat::Rat;

/// Default cap on the order of complete-graph leaves.
pub const DEFAULT_MAX_KN: usize = 7;

/// Cap on the per-edge subdivision factor of the Petersen leaf.
pub const MAX_PETERSEN_STRETCH: usize = 64;

/// Identity of an opaque leaf, independent of its edge weight. The
/// Petersen variant carries a stretch factor: each template edge is
/// realized as a path of that many edges, so stretch 1 is the plain
/// Petersen graph minus an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeafKind {
    PetersenMinusEdge(usize),
    KnMinusEdge(usize),
}

impl LeafKind {
    pub fn name(&self) -> String {
        match self {
            LeafKind::PetersenMinusEdge(1) => "PetersenMinusEdge".to_string(),
            LeafKind::PetersenMinusEdge(m) => format!("PetersenMinusEdge({m})"),
            LeafKind::KnMinusEdge(n) => format!("KnMinusEdge({n})"),
        }
    }

    pub fn is_planar(&self) -> bool {
        match self {
            // Subdividing edges never creates planarity.
            LeafKind::PetersenMinusEdge(_) => false,
            LeafKind::KnMinusEdge(n) => *n <= 4,
        }
    }

    /// Vertex count and unweighted edge list; terminals are always 0 and 1.
    ///
    /// Petersen labeling is frozen for bit-stable certificates: outer cycle
    /// 0..4, inner pentagram 5..9 joined at distance two, spokes i to i+5,
    /// deleted edge (0,1). Edge order: outer minus deleted, inner, spokes.
    /// Under a stretch factor m, template edge t gains interior vertices
    /// 10 + t(m-1) .. 10 + (t+1)(m-1) - 1 in path order.
    pub fn edge_list(&self) -> (usize, Vec<(usize, usize)>) {
        match self {
            LeafKind::PetersenMinusEdge(m) => {
                assert!(*m >= 1, "stretch factor must be positive");
                let mut template = Vec::with_capacity(14);
                for i in 1..5 {
                    template.push((i, (i + 1) % 5));
                }
                for i in 0..5 {
                    template.push((5 + i, 5 + (i + 2) % 5));
                }
                for i in 0..5 {
                    template.push((i, i + 5));
                }
                if *m == 1 {
                    return (10, template);
                }
                let mut edges = Vec::with_capacity(14 * m);
                let mut next = 10;
                for (u, v) in template {
                    let mut prev = u;
                    for _ in 0..(m - 1) {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                    edges.push((prev, v));
                }
                (next, edges)
            }
            LeafKind::KnMinusEdge(n) => {
                let mut edges = Vec::new();
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        if i == 0 && j == 1 {
                            continue;
                        }
                        edges.push((i, j));
                    }
                }
                (*n, edges)
            }
        }
    }
}

/// An opaque leaf: a fixed named graph whose edges all carry one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpaqueLeaf {
    pub kind: LeafKind,
    pub weight: Rat,
}

impl OpaqueLeaf {
    pub fn graph(&self) -> MultiGraph {
        let (n, edges) = self.kind.edge_list();
        let mut g = MultiGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v, self.weight.clone());
        }
        g
    }

    /// The leaf as a validated two-terminal graph with terminals 0 and 1.
    pub fn two_terminal(&self) -> TwoTerminalGraph {
        TwoTerminalGraph::new(self.graph(), 0, 1)
            .expect("opaque leaves are valid two-terminal graphs")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeafError {
    BudgetExceeded { requested: usize, max: usize },
    StretchExceeded { requested: usize, max: usize },
}

impl std::fmt::Display for LeafError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LeafError::BudgetExceeded { requested, max } => {
                write!(f, "complete-graph leaf K{requested} exceeds configured max {max}")
            }
            LeafError::StretchExceeded { requested, max } => {
                write!(f, "Petersen stretch {requested} exceeds configured max {max}")
            }
        }
    }
}

impl std::error::Error for LeafError {}

/// The Petersen graph with the edge between terminals deleted, every
/// remaining edge carrying weight `w`.
pub fn petersen_minus_edge(w: Rat) -> GadgetTerm {
    let leaf = OpaqueLeaf { kind: LeafKind::PetersenMinusEdge(1), weight: w };
    leaf.two_terminal();
    GadgetTerm::Opaque(leaf)
}

/// The Petersen leaf with every template edge subdivided into a path of
/// `stretch` edges, all of weight `w`.
pub fn petersen_minus_edge_stretched(stretch: usize, w: Rat) -> Result<GadgetTerm, LeafError> {
    assert!(stretch >= 1, "stretch factor must be positive");
    if stretch > MAX_PETERSEN_STRETCH {
        return Err(LeafError::StretchExceeded {
            requested: stretch,
            max: MAX_PETERSEN_STRETCH,
        });
    }
    let leaf = OpaqueLeaf { kind: LeafKind::PetersenMinusEdge(stretch), weight: w };
    leaf.two_terminal();
    Ok(GadgetTerm::Opaque(leaf))
}

/// K_n with the terminal edge deleted, uniform weight `w`, capped at
/// [`DEFAULT_MAX_KN`].
pub fn complete_minus_edge(n: usize, w: Rat) -> Result<GadgetTerm, LeafError> {
    complete_minus_edge_with_max(n, w, DEFAULT_MAX_KN)
}

pub fn complete_minus_edge_with_max(
    n: usize,
    w: Rat,
    max: usize,
) -> Result<GadgetTerm, LeafError> {
    assert!(n >= 3, "complete-graph leaf needs n >= 3");
    if n > max {
        return Err(LeafError::BudgetExceeded { requested: n, max });
    }
    let leaf = OpaqueLeaf { kind: LeafKind::KnMinusEdge(n), weight: w };
    leaf.two_terminal();
    Ok(GadgetTerm::Opaque(leaf))
}
