//! Command-line workbench around `ramsey-core`: file formats, run
//! manifests, certificates and the `ramsey-lab` dispatcher.

pub mod cli;
pub mod format;
pub mod manifest;

pub use cli::{dispatch, Cli};
pub use format::{BipartiteFile, ColoringFile};
pub use manifest::RunManifest;
