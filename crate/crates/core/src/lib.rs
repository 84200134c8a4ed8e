//! Engine and verification workbench for Grim, the vertex-deletion game on graphs.
//!
//! A move deletes a vertex, its edges, and every vertex left isolated; the
//! player making the last move wins. The crate computes Sprague-Grundy values
//! and optimal moves, the Octal .6 value sequence, closed-form predictions for
//! structured families, and win probabilities on random graphs.

pub mod canon;
pub mod engine;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod octal;
pub mod random;
pub mod session;
pub mod solver;
pub mod theory;

pub use canon::{canonical_form, CanonicalKey};
pub use engine::{blowup, follower, legal_moves, normalize, Move, WeightedGraph};
pub use error::{Error, Result};
pub use family::{make_family, FamilySpec};
pub use graph::{cartesian_product, components, join, union, Graph, Vertex};
pub use graph6::{emit_graph6, parse_graph6};
pub use solver::{Outcome, SgValue, Solver, SolverConfig, Tiebreak};
pub use octal::{octal6_sequence, SgSequence};
pub use random::{exact_histogram, monte_carlo, p0_bound, EdgeCountHistogram};
pub use session::GameSession;
