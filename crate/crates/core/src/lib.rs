pub mod algebra;
pub mod forge;
pub mod graph;
pub mod regions;
pub mod tutte;
pub mod weights;
pub mod zero;

pub use algebra::poly::UniPoly;
pub use algebra::rat::{parse_rational, rat, rat_i, Rat};
pub use algebra::ratfn::RatFn;
pub use algebra::roots::Bracket;
pub use forge::{complementary_pair, ComplementaryPair, ForgeError, SearchBudget};
pub use graph::multigraph::{MultiGraph, TwoTerminalGraph};
pub use graph::term::{GadgetTerm, Terminals};
pub use regions::{classify_region, Region};
pub use weights::{classify_type, effective_weight, effective_weight_at, GadgetType};
pub use zero::{
    find_zero, find_zero_dual, verify_certificate, verify_certificate_report, FindZeroError,
    ZeroCertificate,
};
