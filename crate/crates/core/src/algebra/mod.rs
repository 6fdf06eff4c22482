//! Exact scalar and polynomial arithmetic.

pub mod poly;
pub mod rat;
pub mod ratfn;
pub mod roots;
