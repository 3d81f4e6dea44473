//! Experiment harness and command-line surface.

pub mod cli;
pub mod experiments;
pub mod fit;
