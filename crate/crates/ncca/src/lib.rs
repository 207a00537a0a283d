//! File formats, renderers and the command-line front end for `ncca-core`.

pub mod cli;
pub mod format;
pub mod render;
