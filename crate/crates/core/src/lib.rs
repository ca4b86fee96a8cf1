//! Exact cellular chain complexes for edge ideals of weighted complete
//! bipartite graphs.
//!
//! The crate builds the polyhedral cell complex `V_{m,n}` labeled by the
//! generators of an edge-weighted (or vertex-weighted) edge ideal of
//! `K_{m,n}`, turns it into a free chain complex of monomial matrices, and
//! decides whether that complex resolves `S/I` in two independent ways:
//!
//! * the acyclicity scan over the lcm lattice
//!   ([`criteria::lcm_oracle`]), backed by exact integer Smith normal forms;
//! * the inductive vertex-deletion predicate ([`criteria::theorem_predicate`]).
//!
//! It also assembles the mapping cone that grows a resolution by one
//! vertex and checks the explicit isomorphism with the truncated complex.
//!
//! Conventions used throughout:
//!
//! * variables are ordered `X_1..X_m, Y_1..Y_n`;
//! * graph vertices and face index sets are 1-based, as printed (`[12,13]`);
//! * all arithmetic is exact (checked machine integers for exponents and
//!   coefficients, arbitrary precision inside Smith normal form).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod chain;
pub mod complex;
pub mod criteria;
mod error;
pub mod graph;
pub mod homology;
pub mod monomial;

pub use error::{Error, Result};
