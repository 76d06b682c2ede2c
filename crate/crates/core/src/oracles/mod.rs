//! Ground truth that does not go through the partition formulas.
//!
//! * [`freudenthal`]: Freudenthal's recursion over dominant weights, for any
//!   dominant highest weight.
//! * [`convolution`]: single-row multiplicities convolved over the weights of
//!   the smaller factor, then recombined in the representation ring.
//! * [`kostka`]: semistandard tableau counts (type A).

pub mod convolution;
pub mod freudenthal;
pub mod kostka;

pub use convolution::{convolution_mult, convolution_tensor};
pub use freudenthal::{freudenthal_diagram, WeightDiagram};
pub use kostka::kostka_count;
