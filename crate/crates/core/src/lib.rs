//! Radio labelings of Cartesian products of two trees.
//!
//! A radio labeling of a graph with diameter `d` assigns integers `f(v)` so
//! that `|f(u) - f(v)| >= d + 1 - d(u, v)` for all distinct `u`, `v`. This
//! crate provides the product metric built from per-tree levels, a closed
//! lower bound on the minimum span, checkers for orderings that attain it,
//! optimal constructions for star x star and path x star, and an exact search
//! for small products.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod io;
pub mod labeling;
pub mod oracle;
pub mod ordering;
pub mod product;
pub mod tree;

pub use error::{Error, Result};
pub use labeling::{greedy_label, verify, RadioLabeling};
pub use ordering::VertexOrdering;
pub use product::{ProductGraph, ProductVertex};
pub use tree::Tree;
