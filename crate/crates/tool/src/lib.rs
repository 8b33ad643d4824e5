//! File formats, seeded corpora, run records and the command implementations
//! behind the `chromvec` binary.
//!
//! Graphs are read from edge-list text or named specs such as `cycle:5`,
//! `petersen` or `random:8` (Erdős–Rényi, p = 1/2, from the run seed).
//! Vector colorings and quantum certificates are JSON documents; every
//! command emits a [`record::RunRecord`].

pub mod cli;
pub mod corpus;
mod error;
pub mod formats;
pub mod record;
pub mod spec;

pub use error::{Exit, ToolError};
