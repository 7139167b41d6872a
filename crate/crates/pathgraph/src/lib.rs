//! Certifying recognition of path graphs.
//!
//! A path graph is the intersection graph of a family of subpaths of a tree.
//! [`recognize`] either builds a clique path tree for its input or returns an
//! induced copy of one of the minimal forbidden graphs `F0`..`F16`.

pub mod chordal;
pub mod cli;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod recognizer;
pub mod simplicial;
pub mod sweep;

pub use graph::{Graph, VertexSet};
pub use recognizer::{recognize, RecognitionResult};
