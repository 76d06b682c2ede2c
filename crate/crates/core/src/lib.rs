//! Exact weight multiplicities for bivariate representations `π_{kε₁+lε₂}`
//! of the classical complex Lie algebras of types A, B, C and D.
//!
//! The crate is organised bottom-up:
//!
//! * [`root_systems`]: algebra descriptors, weights, dominance, Weyl orbits
//!   and the Weyl dimension formula.
//! * [`partitions`]: bounded-length partitions, part-count profiles, the
//!   triangular index streams summed over by the multiplicity formulas, the
//!   total binomial coefficient and the one-norm sphere count.
//! * [`multiplicity`]: the partition-indexed formulas for single weights and
//!   their closed-form special cases.
//! * [`oracles`]: independent ground truth (Freudenthal recursion, direct
//!   tensor-product convolution, semistandard tableau counting).
//! * [`weight_tables`]: full and dominant weight tables with a dimension
//!   audit.
//! * [`cli`]: the `bivar` command-line front end and table serialization.
//!
//! All counts are arbitrary precision; nothing in the engine uses floating
//! point.

pub mod cli;
pub mod error;
pub mod multiplicity;
pub mod oracles;
pub mod partitions;
pub mod root_systems;
pub mod weight_tables;

pub use error::{Error, Result};
pub use multiplicity::{mult_bivariate, HalfInteger, Multiplicity};
pub use root_systems::{AlgebraSpec, Family, Weight};
pub use weight_tables::{build_table, MultiplicityTable};

/// Engine version recorded in table metadata and bench output.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
