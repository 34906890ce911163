//! Divided-difference tables, split Newton–Lagrange interpolation, arbitrary
//! order numerical differentiation and quadrature weight generation, generic
//! over `f64` and exact rationals.

pub mod differentiation;
pub mod error;
pub mod interpolation;
pub mod opcount;
pub mod oracle;
pub mod par;
pub mod quadrature;
pub mod samples;
pub mod scalar;
pub mod tables;

pub use error::{Error, Result};
pub use opcount::{count_ops, diff_op_counts, lagrange_counts, newton_counts, OpCounts};
pub use par::Exec;
pub use samples::{GridSpec, SampleSet, TwoSided};
pub use scalar::{rat, Rational, Scalar};
