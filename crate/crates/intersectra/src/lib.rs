//! Std companion to `intersectra-core`: the family text format, JSON run
//! reports, a threaded search driver, verification suites and the CLI.

pub mod cli;
pub mod format;
pub mod oracle;
pub mod parallel;
pub mod random;
pub mod report;
pub mod verify;
