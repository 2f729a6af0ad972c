//! The embedded acceptance grids, one or more sweeps per criterion.

use crate::params::ConfigError;
use crate::sweep::{prepare, Sweep, SweepOptions};

/// Version tag of the embedded grids.
pub const SUITE_VERSION: &str = "1";

pub struct SuiteEntry {
    pub criterion: u8,
    pub family: &'static str,
    pub overrides: &'static [(&'static str, &'static str)],
    pub trunc: Option<&'static str>,
    pub include_exceptional: bool,
    pub samples: Option<usize>,
}

const fn entry(criterion: u8, family: &'static str, overrides: &'static [(&'static str, &'static str)]) -> SuiteEntry {
    SuiteEntry { criterion, family, overrides, trunc: None, include_exceptional: false, samples: None }
}

const fn series(family: &'static str, overrides: &'static [(&'static str, &'static str)], d: &'static str) -> SuiteEntry {
    SuiteEntry { criterion: 7, family, overrides, trunc: Some(d), include_exceptional: false, samples: None }
}

pub static SUITE: &[SuiteEntry] = &[
    entry(1, "gensum", &[]),
    SuiteEntry { include_exceptional: true, ..entry(2, "qs2", &[]) },
    SuiteEntry { samples: Some(1000), ..entry(3, "sears", &[]) },
    entry(4, "burge.closed", &[("N", "1"), ("sigma", "0"), ("M", "0..8"), ("L", "0..8")]),
    entry(4, "burge.closed", &[("N", "2..3"), ("M", "0..5"), ("L", "0..5:1/2")]),
    entry(5, "burge.traf1", &[("N", "1"), ("sigma", "0"), ("M", "0..8"), ("L", "0..8")]),
    entry(5, "burge.traf2", &[("N", "1"), ("sigma", "0"), ("M", "0..8"), ("L", "0..8")]),
    entry(5, "burge.traf1", &[("N", "2..3"), ("M", "0..5"), ("L", "0..5:1/2")]),
    entry(5, "burge.traf2", &[("N", "2..3"), ("M", "0..5"), ("L", "0..5:1/2")]),
    entry(6, "multinom.tnew", &[]),
    entry(6, "multinom.classical", &[]),
    entry(6, "multinom.difference", &[]),
    series("series.durfee", &[], "25"),
    series("series.limlm", &[], "25"),
    series("series.bailey", &[], "25"),
    series("series.product", &[], "30"),
    series("series.string", &[], "20"),
    SuiteEntry { trunc: Some("50"), ..entry(8, "oracle.partitions", &[]) },
    entry(8, "oracle.lattice", &[]),
];

impl SuiteEntry {
    pub fn prepare(&self) -> Result<Sweep, ConfigError> {
        let overrides: Vec<(String, String)> = self.overrides.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let opts = SweepOptions {
            trunc: self.trunc.map(str::to_string),
            include_exceptional: self.include_exceptional,
            samples: self.samples,
            seed: None,
        };
        prepare(self.family, &overrides, &opts)
    }
}
