//! The series-parallel gadget term algebra.

use super::leaves::{LeafKind, OpaqueLeaf};
use super::multigraph::MultiGraph;
use crate::algebra::rat::{parse_rational, Rat};

/// Terminal labels on a realized gadget graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Terminals {
    pub x: usize,
    pub y: usize,
}

/// An algebraic description of a two-terminal gadget.
///
/// `Series` and `Parallel` nodes carry at least two children when built
/// through [`GadgetTerm::series`] and [`GadgetTerm::parallel`], which also
/// flatten nested nodes of the same kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetTerm {
    Edge(Rat),
    Series(Vec<GadgetTerm>),
    Parallel(Vec<GadgetTerm>),
    Opaque(OpaqueLeaf),
}

impl GadgetTerm {
    pub fn edge(w: Rat) -> GadgetTerm {
        GadgetTerm::Edge(w)
    }

    pub fn series(children: Vec<GadgetTerm>) -> GadgetTerm {
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            match c {
                GadgetTerm::Series(cs) => flat.extend(cs),
                other => flat.push(other),
            }
        }
        assert!(flat.len() >= 2, "series node needs at least 2 children");
        GadgetTerm::Series(flat)
    }

    pub fn parallel(children: Vec<GadgetTerm>) -> GadgetTerm {
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            match c {
                GadgetTerm::Parallel(cs) => flat.extend(cs),
                other => flat.push(other),
            }
        }
        assert!(flat.len() >= 2, "parallel node needs at least 2 children");
        GadgetTerm::Parallel(flat)
    }

    /// Series chain of `k` copies of `t`; `k = 1` is `t` itself.
    pub fn series_copies(t: &GadgetTerm, k: usize) -> GadgetTerm {
        assert!(k >= 1);
        if k == 1 {
            t.clone()
        } else {
            GadgetTerm::series(vec![t.clone(); k])
        }
    }

    /// Parallel bundle of `k` copies of `t`; `k = 1` is `t` itself.
    pub fn parallel_copies(t: &GadgetTerm, k: usize) -> GadgetTerm {
        assert!(k >= 1);
        if k == 1 {
            t.clone()
        } else {
            GadgetTerm::parallel(vec![t.clone(); k])
        }
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            GadgetTerm::Edge(_) | GadgetTerm::Opaque(_) => 1,
            GadgetTerm::Series(cs) | GadgetTerm::Parallel(cs) => {
                cs.iter().map(|c| c.size()).sum()
            }
        }
    }

    /// Edge count of the realization, without building it.
    pub fn realized_edge_count(&self) -> usize {
        match self {
            GadgetTerm::Edge(_) => 1,
            GadgetTerm::Opaque(leaf) => leaf.kind.edge_list().1.len(),
            GadgetTerm::Series(cs) | GadgetTerm::Parallel(cs) => {
                cs.iter().map(|c| c.realized_edge_count()).sum()
            }
        }
    }

    /// A dipole is a single edge or a parallel bundle of edges.
    pub fn is_dipole(&self) -> bool {
        match self {
            GadgetTerm::Edge(_) => true,
            GadgetTerm::Parallel(cs) => cs.iter().all(|c| matches!(c, GadgetTerm::Edge(_))),
            _ => false,
        }
    }

    /// Whether the realization has an edge directly joining the terminals.
    pub fn terminals_adjacent(&self) -> bool {
        match self {
            GadgetTerm::Edge(_) => true,
            GadgetTerm::Series(cs) => cs.len() == 1 && cs[0].terminals_adjacent(),
            GadgetTerm::Parallel(cs) => cs.iter().any(|c| c.terminals_adjacent()),
            GadgetTerm::Opaque(_) => false,
        }
    }

    /// True when the realization is a two-terminal graph in the strict
    /// sense: connected, loopless, terminals distinct and non-adjacent.
    /// The first three are automatic for well-formed terms.
    pub fn is_two_terminal_graph(&self) -> bool {
        !self.terminals_adjacent()
    }

    pub fn is_planar(&self) -> bool {
        match self {
            GadgetTerm::Edge(_) => true,
            GadgetTerm::Opaque(leaf) => leaf.kind.is_planar(),
            GadgetTerm::Series(cs) | GadgetTerm::Parallel(cs) => {
                cs.iter().all(|c| c.is_planar())
            }
        }
    }

    /// Materializes the term as a multigraph with labelled terminals.
    /// Vertex numbering is deterministic: terminals are 0 and 1, internal
    /// vertices are allocated depth-first over the term.
    pub fn realize(&self) -> (MultiGraph, Terminals) {
        let mut g = MultiGraph::new(2);
        self.build_into(&mut g, 0, 1);
        (g, Terminals { x: 0, y: 1 })
    }

    fn build_into(&self, g: &mut MultiGraph, x: usize, y: usize) {
        match self {
            GadgetTerm::Edge(w) => g.add_edge(x, y, w.clone()),
            GadgetTerm::Series(cs) => {
                let mut prev = x;
                for (i, c) in cs.iter().enumerate() {
                    let next = if i + 1 == cs.len() { y } else { g.add_vertex() };
                    c.build_into(g, prev, next);
                    prev = next;
                }
            }
            GadgetTerm::Parallel(cs) => {
                for c in cs {
                    c.build_into(g, x, y);
                }
            }
            GadgetTerm::Opaque(leaf) => {
                let (n, edges) = leaf.kind.edge_list();
                let mut map = vec![0usize; n];
                map[0] = x;
                map[1] = y;
                for slot in map.iter_mut().skip(2) {
                    *slot = g.add_vertex();
                }
                for (u, v) in edges {
                    g.add_edge(map[u], map[v], leaf.weight.clone());
                }
            }
        }
    }

    /// Structural dual: series and parallel swapped recursively. Edge
    /// weights are carried over unchanged; the dual gadget is meant to be
    /// read at the transformed point (q, q/v).
    pub fn dual_term(&self) -> Result<GadgetTerm, DualError> {
        match self {
            GadgetTerm::Edge(w) => Ok(GadgetTerm::Edge(w.clone())),
            GadgetTerm::Opaque(_) => Err(DualError::NotSeriesParallel),
            GadgetTerm::Series(cs) => {
                let duals = cs
                    .iter()
                    .map(|c| c.dual_term())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GadgetTerm::Parallel(duals))
            }
            GadgetTerm::Parallel(cs) => {
                let duals = cs
                    .iter()
                    .map(|c| c.dual_term())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GadgetTerm::Series(duals))
            }
        }
    }

    /// Parses the prefix serialization produced by `Display`. Opaque leaves
    /// serialize without their weight, so the caller supplies the weight to
    /// install on them.
    pub fn parse(s: &str, opaque_weight: &Rat) -> Result<GadgetTerm, TermParseError> {
        let mut cur = Cursor { bytes: s.trim().as_bytes(), pos: 0 };
        let t = cur.term(opaque_weight)?;
        if cur.pos != cur.bytes.len() {
            return Err(TermParseError::TrailingInput { pos: cur.pos });
        }
        Ok(t)
    }
}

impl std::fmt::Display for GadgetTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GadgetTerm::Edge(w) => write!(f, "E({w})"),
            GadgetTerm::Opaque(leaf) => write!(f, "{}", leaf.kind.name()),
            GadgetTerm::Series(cs) => {
                write!(f, "S(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            GadgetTerm::Parallel(cs) => {
                write!(f, "P(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualError {
    NotSeriesParallel,
}

impl std::fmt::Display for DualError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "term contains an opaque leaf and has no structural dual")
    }
}

impl std::error::Error for DualError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermParseError {
    UnexpectedEnd,
    UnexpectedChar { pos: usize, found: char },
    UnknownConstructor { pos: usize, name: String },
    BadWeight { pos: usize },
    BadArity { pos: usize },
    BadLeafOrder { pos: usize },
    TrailingInput { pos: usize },
}

impl std::fmt::Display for TermParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TermParseError::UnexpectedEnd => write!(f, "unexpected end of term"),
            TermParseError::UnexpectedChar { pos, found } => {
                write!(f, "unexpected character {found:?} at byte {pos}")
            }
            TermParseError::UnknownConstructor { pos, name } => {
                write!(f, "unknown constructor {name:?} at byte {pos}")
            }
            TermParseError::BadWeight { pos } => write!(f, "malformed weight at byte {pos}"),
            TermParseError::BadArity { pos } => {
                write!(f, "series/parallel needs at least 2 children (at byte {pos})")
            }
            TermParseError::BadLeafOrder { pos } => {
                write!(f, "complete-graph leaf order out of range at byte {pos}")
            }
            TermParseError::TrailingInput { pos } => {
                write!(f, "trailing input at byte {pos}")
            }
        }
    }
}

impl std::error::Error for TermParseError {}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), TermParseError> {
        match self.peek() {
            Some(c) if c == b => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(TermParseError::UnexpectedChar { pos: self.pos, found: c as char }),
            None => Err(TermParseError::UnexpectedEnd),
        }
    }

    fn ident(&mut self) -> Result<String, TermParseError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return match self.peek() {
                Some(c) => {
                    Err(TermParseError::UnexpectedChar { pos: self.pos, found: c as char })
                }
                None => Err(TermParseError::UnexpectedEnd),
            };
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn rational(&mut self) -> Result<Rat, TermParseError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == b'-' || c == b'/' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| TermParseError::BadWeight { pos: start })?;
        parse_rational(text).map_err(|_| TermParseError::BadWeight { pos: start })
    }

    fn term(&mut self, opaque_weight: &Rat) -> Result<GadgetTerm, TermParseError> {
        let at = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "E" => {
                self.expect(b'(')?;
                let w = self.rational()?;
                self.expect(b')')?;
                Ok(GadgetTerm::Edge(w))
            }
            "S" | "P" => {
                self.expect(b'(')?;
                let mut children = vec![self.term(opaque_weight)?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    children.push(self.term(opaque_weight)?);
                }
                self.expect(b')')?;
                if children.len() < 2 {
                    return Err(TermParseError::BadArity { pos: at });
                }
                if name == "S" {
                    Ok(GadgetTerm::Series(children))
                } else {
                    Ok(GadgetTerm::Parallel(children))
                }
            }
            "PetersenMinusEdge" => {
                // Bare form is stretch 1; a parenthesized argument names
                // the per-edge subdivision factor.
                let mut stretch = 1usize;
                if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let m = self.rational()?;
                    self.expect(b')')?;
                    if !m.is_integer() {
                        return Err(TermParseError::BadLeafOrder { pos: at });
                    }
                    use num_traits::ToPrimitive;
                    stretch = m
                        .to_integer()
                        .to_usize()
                        .filter(|s| (1..=crate::graph::leaves::MAX_PETERSEN_STRETCH).contains(s))
                        .ok_or(TermParseError::BadLeafOrder { pos: at })?;
                }
                Ok(GadgetTerm::Opaque(OpaqueLeaf {
                    kind: LeafKind::PetersenMinusEdge(stretch),
                    weight: opaque_weight.clone(),
                }))
            }
            "KnMinusEdge" => {
                self.expect(b'(')?;
                let n = self.rational()?;
                self.expect(b')')?;
                let n = if n.is_integer() {
                    n.to_integer()
                } else {
                    return Err(TermParseError::BadLeafOrder { pos: at });
                };
                use num_traits::ToPrimitive;
                let n = n.to_usize().ok_or(TermParseError::BadLeafOrder { pos: at })?;
                if !(3..=8).contains(&n) {
                    return Err(TermParseError::BadLeafOrder { pos: at });
                }
                Ok(GadgetTerm::Opaque(OpaqueLeaf {
                    kind: LeafKind::KnMinusEdge(n),
                    weight: opaque_weight.clone(),
                }))
            }
            _ => Err(TermParseError::UnknownConstructor { pos: at, name }),
        }
    }
}
