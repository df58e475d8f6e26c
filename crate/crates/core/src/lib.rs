//! Constructions of d-divisible alpha-labelings for caterpillars, hairy
//! cycles, coronas and cycles, and their development into cyclic
//! decompositions of complete multipartite graphs.

pub mod construction;
pub mod cycle;
pub mod decompose;
pub mod error;
pub mod graph;
pub mod hairy;
pub mod io;
pub mod labeling;
pub mod oracle;
pub mod transforms;

pub use error::{Error, Result};
