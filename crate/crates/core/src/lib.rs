//! Exact arithmetic for the branching graphs of easy-group diagram algebra
//! towers.
//!
//! The crate is organised around five pieces:
//!
//! - [`young`] — Young diagrams, box moves, symmetric-group dimensions and
//!   permutation cycle types;
//! - [`graphs`] — graded branching graphs (Young graph, rook-Brauer graph
//!   `gamma_B`, coupled Young graph `theta`, the principal graph `lambda`,
//!   the walled and doubled Young graphs), pascalization, path counting,
//!   central-measure coherence and ergodic ratio sequences;
//! - [`arrays`] — the integer arrays `M(n,l)` and `K(n,k,l)` that factor
//!   graph dimensions through Young dimensions, the hyperoctahedral
//!   dimension sequence, closed forms, and the ratio-inequality sweep for
//!   the `K`-array conjecture;
//! - [`algebra`] — set-partition diagrams, the six easy categories,
//!   diagram algebras over polynomial coefficients in the loop parameter,
//!   and the quotient onto the symmetric group algebra;
//! - [`traces`] — Thoma-parameter traces on symmetric groups and their
//!   lifts to diagram algebras.
//!
//! Everything is exact: dimensions are arbitrary-precision integers and
//! all ratios, measures and traces are arbitrary-precision rationals.
//! There is no floating point anywhere in the crate.

pub mod algebra;
pub mod arrays;
pub mod error;
pub mod graphs;
pub mod ratio;
pub mod report;
pub mod traces;
pub mod young;

pub use error::{Error, Result};

/// Arbitrary-precision nonnegative integer used for all path counts and
/// dimensions.
pub type BigCount = num_bigint::BigUint;

/// Arbitrary-precision rational used for ratios, measures and traces.
pub type BigRatio = num_rational::BigRational;
