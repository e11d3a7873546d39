//! Front end for the `branchkit` binary.

pub mod args;
pub mod record;
pub mod run;

pub use record::OutputRecord;
