//! Twisted arrow constructions on simplicial sets, bisimplicial sets and
//! finite categories, with exhaustive finite checks of their properties.

pub mod bisset;
pub mod delta;
pub mod error;
pub mod fincat;
pub mod groupoid;
pub mod gss;
pub mod sset;
pub mod unionfind;

pub use error::{Error, Result};
