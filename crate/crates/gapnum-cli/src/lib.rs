//! Command-line surface for the gap-number solver: subcommands, tiling
//! renderers and the reference-value verifier.

pub mod cli;
pub mod render;
