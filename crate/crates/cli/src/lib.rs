//! Library side of the `gammalcm` command: report types and the
//! verification suites.

pub mod report;
pub mod suites;
