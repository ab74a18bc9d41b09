//! Generic and typical completion ranks of partial-matrix patterns.

pub mod cli;
pub mod complete;
pub mod error;
pub mod ffmat;
pub mod gcr;
pub mod io;
pub mod pattern;
pub mod typical;

pub use error::{Error, Result};
