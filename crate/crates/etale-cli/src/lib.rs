//! Support library for the `etale` binary: configuration files, checkpoint
//! handling, and the threaded search runner.
//!
//! Kept as a library so the checkpoint/resume and parallel-merge paths are
//! testable apart from the command-line surface.

pub mod config;
pub mod runner;
