//! Exact q-series engine: Laurent polynomials with rational exponents,
//! Gaussian binomials, Cartan-lattice sums, Burge polynomials, q-multinomials
//! and truncated series checks.

pub mod burge;
pub mod error;
pub mod lattice;
pub mod multinom;
pub mod qbinom;
pub mod qpoly;
pub mod saalschutz;
pub mod series;

pub use error::{Error, Result};
pub use qpoly::{Exponent, QPoly, Truncation};
