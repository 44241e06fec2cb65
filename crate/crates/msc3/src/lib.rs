//! Canonical forms for 3-dimensional algebras given by structure constants.

pub mod catalog;
pub mod cli_io;
pub mod classify_char2;
pub mod classify_odd;
pub mod engine;
pub mod field;
pub mod linalg;
pub mod msc;
pub mod normalize;
pub mod oracle;

pub use engine::{classify, ClassificationResult, ClassifyError};
