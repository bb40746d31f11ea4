//! Text formats for graphs, tree decompositions, orientations, embeddings,
//! MinRep instances and IP assignments. Ids in files are 1-based.

pub mod graph_file;
pub mod minrep_file;
pub mod orientation_file;
pub mod rotation_file;
pub mod solution_file;
pub mod td_file;
pub mod text;

pub use text::{ParseError, ParseErrorKind};
