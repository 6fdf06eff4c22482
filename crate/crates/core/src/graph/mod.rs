//! Multigraphs, two-terminal graphs, gadget terms, and named leaf graphs.

pub mod leaves;
pub mod multigraph;
pub mod term;
