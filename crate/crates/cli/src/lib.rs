//! Library half of the `gzeta` command-line tool: argument model, dispatch,
//! rendering, and the verification suites shared with the test harness.

pub mod app;
pub mod suite;
