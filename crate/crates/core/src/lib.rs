//! Exact computations for fibring questions about finitely presented groups:
//! integer linear algebra, words and presentations, Stallings graphs, cup
//! products and twisted `H^1`, monodromy obstructions, homology growth in
//! Cayley graphs and orbifold base checks.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod fibration;
pub mod group;
pub mod linalg;
pub mod monodromy;
pub mod ninf;
pub mod stallings;
mod text;

pub use error::{Error, Result};
