//! Problem files, verb dispatch, and reports for the `hs` binary.

pub mod commands;
pub mod problem;
pub mod report;

pub use commands::{dispatch, MethodChoice, Options};
pub use problem::{parse_problem, Problem, ProblemSpec};
pub use report::{Entry, Failure, RunReport};
