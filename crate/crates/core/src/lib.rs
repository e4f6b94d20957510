//! Exact domination polynomials of small graphs, the cycle-family sequences
//! derived from them, and computational checks that cycles, wheels and their
//! relatives are determined by their domination polynomials.

pub mod cli;
pub mod cycle;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod poly;
pub mod valuation;
pub mod verify;

pub use graph::{build_family, disjoint_union, join, Graph, GraphFamily};
pub use oracle::{domination_number, domination_polynomial, domination_profile};
pub use poly::IntPolynomial;
