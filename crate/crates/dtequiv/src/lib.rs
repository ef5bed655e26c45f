//! Document formats, parallel drivers, benchmarks and the command line for
//! [`dtequiv_core`].

pub mod bench;
pub mod cli;
pub mod format;
pub mod parallel;
