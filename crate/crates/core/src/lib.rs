//! Rank function of the generic linearly constrained rigidity matroid in the
//! plane, computed three ways: a graded pebble game, Edmonds' partition
//! minimum, and the rank of a random rigidity matrix over a prime field.
//! Also minimum-value admissible 1-thin covers and `k`-balance checks.

pub mod balance;
pub mod count;
pub mod cover;
pub mod error;
pub mod field;
pub mod generators;
pub mod graph;
pub mod pebble;
pub mod realization;

pub use error::{Error, Result};
pub use graph::{Element, ElementSet, LoopedGraph, Vertex};
