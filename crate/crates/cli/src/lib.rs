//! Job-file parsing and command execution behind the `symrec` binary.

pub mod jobspec;
pub mod run;
pub mod table;

pub use jobspec::{parse_jobspec, JobSpec, ParseError};
pub use run::{run, Failure, Output, Settings};
