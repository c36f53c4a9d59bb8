//! Support code for the `bgrover` binary: angle syntax and report output.

pub mod angle;
pub mod output;
