//! File formats and the command-line driver for [`tanbase_core`].

pub mod cli;
pub mod codec;

pub use cli::{run, Outcome};
