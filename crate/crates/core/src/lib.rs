//! History- and diversity-based test prioritization for CI build histories,
//! with the replay harness used to evaluate it.

pub mod cli;
pub mod diversity;
pub mod error;
pub mod eval;
pub mod hbtp;
pub mod ingest;
pub mod model;
pub mod prioritize;

pub use error::{Error, Result};
