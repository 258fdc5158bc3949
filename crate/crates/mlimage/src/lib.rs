//! File formats, the expression parser and the command-line interface on top
//! of [`mlimage_core`].

pub mod cli;
pub mod formats;
pub mod parse;
pub mod random;
