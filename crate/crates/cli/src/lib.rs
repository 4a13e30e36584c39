//! JSON report types shared by the `cosmo` binary and its tests.

pub mod report;
