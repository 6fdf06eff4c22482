//! Weighted multigraphs with loops and parallel edges.

use crate::algebra::rat::Rat;

/// A multigraph on vertices `0..vertex_count` with an ordered list of
/// weighted edges. Loops (`u == v`) and parallel edges are allowed.
///
/// The edge list order is part of the identity of the graph: certificates
/// serialize graphs by this order and re-serialization is bit-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize, Rat)>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new() }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Appends an edge. Panics if an endpoint is out of range.
    pub fn add_edge(&mut self, u: usize, v: usize, w: Rat) {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        self.edges.push((u, v, w));
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, Rat)] {
        &self.edges
    }

    /// Degree of `u`, counting each loop twice.
    pub fn degree(&self, u: usize) -> usize {
        let mut d = 0;
        for (a, b, _) in &self.edges {
            if *a == u {
                d += 1;
            }
            if *b == u {
                d += 1;
            }
        }
        d
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(a, b, _)| a == b)
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|(a, b, _)| (*a == u && *b == v) || (*a == v && *b == u))
    }

    pub fn num_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut comps = self.n;
        for (u, v, _) in &self.edges {
            let ru = find(&mut parent, *u);
            let rv = find(&mut parent, *v);
            if ru != rv {
                parent[ru] = rv;
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.num_components() == 1
    }

    /// New graph with `v` merged into `u`. Edges between `u` and `v` become
    /// loops; vertices above `v` shift down by one.
    pub fn identify(&self, u: usize, v: usize) -> MultiGraph {
        assert!(u < self.n && v < self.n && u != v, "bad identification");
        let map = |w: usize| -> usize {
            if w == v {
                if u > v {
                    u - 1
                } else {
                    u
                }
            } else if w > v {
                w - 1
            } else {
                w
            }
        };
        let mut g = MultiGraph::new(self.n - 1);
        for (a, b, w) in &self.edges {
            g.add_edge(map(*a), map(*b), w.clone());
        }
        g
    }

    /// Copy with every edge weight replaced by `w`.
    pub fn with_uniform_weight(&self, w: &Rat) -> MultiGraph {
        let mut g = MultiGraph::new(self.n);
        for (a, b, _) in &self.edges {
            g.add_edge(*a, *b, w.clone());
        }
        g
    }

    /// Deterministic normal form used as a memo key.
    ///
    /// Vertices are reordered by (degree, sorted incident weights, original
    /// index) and the edge multiset is serialized in sorted order. Equal keys
    /// imply identical labelled graphs, so memo hits are always sound; the
    /// reordering only improves the hit rate across recursion branches.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut profile: Vec<(usize, String, usize)> = (0..self.n)
            .map(|u| {
                let mut ws: Vec<String> = self
                    .edges
                    .iter()
                    .filter(|(a, b, _)| *a == u || *b == u)
                    .map(|(_, _, w)| w.to_string())
                    .collect();
                ws.sort();
                (self.degree(u), ws.join(","), u)
            })
            .collect();
        profile.sort();
        let mut relabel = vec![0usize; self.n];
        for (new, (_, _, old)) in profile.iter().enumerate() {
            relabel[*old] = new;
        }
        let mut edges: Vec<(usize, usize, String)> = self
            .edges
            .iter()
            .map(|(a, b, w)| {
                let (x, y) = (relabel[*a], relabel[*b]);
                (x.min(y), x.max(y), w.to_string())
            })
            .collect();
        edges.sort();
        let mut key = format!("{};", self.n).into_bytes();
        for (a, b, w) in edges {
            key.extend_from_slice(format!("{a}-{b}:{w};").as_bytes());
        }
        key
    }
}

/// Why a graph fails to be a valid two-terminal graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoTerminalError {
    TerminalOutOfRange,
    EqualTerminals,
    Disconnected,
    HasLoop,
    AdjacentTerminals,
}

impl std::fmt::Display for TwoTerminalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            TwoTerminalError::TerminalOutOfRange => "terminal out of range",
            TwoTerminalError::EqualTerminals => "terminals coincide",
            TwoTerminalError::Disconnected => "graph is not connected",
            TwoTerminalError::HasLoop => "graph has a loop",
            TwoTerminalError::AdjacentTerminals => "terminals are adjacent",
        };
        write!(f, "{msg}")
    }
}

impl std::error::Error for TwoTerminalError {}

/// A connected loopless multigraph with two distinguished non-adjacent
/// terminal vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTerminalGraph {
    graph: MultiGraph,
    x: usize,
    y: usize,
}

impl TwoTerminalGraph {
    pub fn new(graph: MultiGraph, x: usize, y: usize) -> Result<Self, TwoTerminalError> {
        if x >= graph.vertex_count() || y >= graph.vertex_count() {
            return Err(TwoTerminalError::TerminalOutOfRange);
        }
        if x == y {
            return Err(TwoTerminalError::EqualTerminals);
        }
        if graph.has_loop() {
            return Err(TwoTerminalError::HasLoop);
        }
        if !graph.is_connected() {
            return Err(TwoTerminalError::Disconnected);
        }
        if graph.are_adjacent(x, y) {
            return Err(TwoTerminalError::AdjacentTerminals);
        }
        Ok(TwoTerminalGraph { graph, x, y })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    /// The graph with the terminals identified.
    pub fn closed(&self) -> MultiGraph {
        self.graph.identify(self.x, self.y)
    }

    /// The graph with an extra terminal-to-terminal edge of weight `w`.
    pub fn plus_edge(&self, w: Rat) -> MultiGraph {
        let mut g = self.graph.clone();
        g.add_edge(self.x, self.y, w);
        g
    }
}
