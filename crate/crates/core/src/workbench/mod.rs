//! Tooling around the kernels: instance files, generators, exhaustive
//! enumeration and the run/sweep harness.

pub mod enumerate;
pub mod format;
pub mod generate;
pub mod run;
pub mod sweep;
