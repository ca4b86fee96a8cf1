//! Std companion to `cellres-core`: graph JSON input, matrix and report
//! export, the parallel survey driver, and the command implementations
//! behind the `cellres` binary.

pub mod cli;
pub mod export;
pub mod input;
pub mod survey;

pub use cellres_core as core;
