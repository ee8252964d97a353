//! Finite categories given by explicit composition tables.

pub mod category;
pub mod construct;
pub mod functor;

pub use category::{chains, CategoryBuilder, Chain, FinCategory};
pub use construct::*;
pub use functor::{find_equivalence, find_isomorphism, full_subcategory, is_equivalence, skeleton, EquivalenceReport, FinFunctor};
