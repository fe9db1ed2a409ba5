//! Certified search for convex central configurations of the planar
//! four-body problem.
//!
//! Pipeline: outward-rounded interval arithmetic feeds a Krawczyk-operator
//! search that certifies the unique equilibrium for a fixed mass vector; a
//! quantitative implicit-function-theorem bound turns one certified point
//! into a mass ball on which the solution persists uniquely; a complement
//! exclusion sweep proves nothing else exists in the admissible hull; and a
//! grid driver tiles a mass cube with such balls and verifies the covering.

pub mod boxes;
pub mod covering;
pub mod dd;
pub mod eqs;
pub mod error;
pub mod exclusion;
pub mod ift;
pub mod interval;
pub mod krawczyk;
pub mod linalg;
pub mod round;
pub mod scalar;

pub use boxes::{Box4, IntervalMatrix};
pub use error::CcError;
pub use interval::Interval;

/// Build identity recorded in journals and certificates.
pub const TOOL_VERSION: &str = concat!("cc4b ", env!("CARGO_PKG_VERSION"));
