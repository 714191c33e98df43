//! Library surface behind the `cibench` binary: fixtures, reports, file IO
//! and the runners the subcommands share with the test suites.

pub mod edgeio;
pub mod fixtures;
pub mod report;
pub mod runner;
