//! Exact Turán-type computations for hypergraphs whose edges may have
//! different sizes.
//!
//! The central quantity is the Lubell value `h_n(G) = Σ_F 1 / C(n, |F|)` and
//! its maximum `π_n` over subgraphs of `K_n^R` avoiding a forbidden family.
//! Everything is exact rational arithmetic except [`classify::formula_1k`].

pub mod classify;
pub mod cli;
pub mod combinatorics;
pub mod construct;
pub mod embed;
pub mod error;
pub mod extremal;
pub mod format;
pub mod hypergraph;
pub mod rational;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::{EdgeTypeSet, Hypergraph};
pub use rational::Rational;
