//! Block-aware text differencing.
//!
//! Computes an edit script of seven action types between two versions of a
//! text file: line deletes, adds, updates, splits, and merges, plus block
//! moves and copies with preserved relative indentation. Candidate line and
//! block mappings are generated from a base line diff and conflicts are
//! resolved by iterative minimum-weight assignment, so the final script is
//! small and close to the edit a developer actually made.
//!
//! The companion mutation harness injects known edits into a file and
//! scores a computed script against that ground truth.

pub mod base_diff;
pub mod block_analysis;
pub mod config;
pub mod es_builder;
pub mod hunk_analysis;
pub mod line;
pub mod matching;
pub mod mutate;
pub mod pipeline;
pub mod render;
pub mod script;
pub mod similarity;

pub use config::{BaseAlgorithm, Config};
pub use line::{expand_indent, source_lines, SourceLine};
pub use pipeline::diff_lines;
pub use script::{ActionKind, EditAction, EditScript, LineRange};
