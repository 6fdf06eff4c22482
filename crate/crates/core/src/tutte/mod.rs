//! Exact evaluation of the random-cluster partition function.

pub mod complete;
pub mod delcon;
mod dsu;
pub mod duality;
pub mod glue;
pub mod split;
pub mod subset;
