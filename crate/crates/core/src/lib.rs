//! Reductions between 3SUM, 3XOR, triangle detection and listing, and 4-clique.

pub mod bits;
pub mod clique_reduce;
pub mod detect_reduce;
pub mod error;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod io;
pub mod list_reduce;
pub mod prand;
pub mod solvers;
pub mod stats;
pub mod xor_reduce;
pub mod z3;

pub use bits::BitString;
pub use error::{Error, Result};
pub use graph::{normalize_graph, Graph, Triangle, TripartiteGraph};
pub use instance::{BitVectorSet, C3xorArray, Instance, IntegerSet, Z3VectorSet};
pub use z3::Z3Vector;
