//! Batch verification front end: parameter sweeps over the identity families
//! of `qsum-core`, JSON-lines reports and a fixed exit-code contract.

pub mod app;
pub mod families;
pub mod params;
pub mod report;
pub mod suite;
pub mod sweep;

pub use app::{main_with, EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK};
pub use report::{IdentityReport, Outcome, Summary, Verdict};
