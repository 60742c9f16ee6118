//! Exact matching invariants of small simple graphs: the induced matching
//! number, the minimum maximal matching number and the matching number,
//! together with the extremal constructions and exhaustive searches built on them.

pub mod canon;
pub mod composition;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod search;

pub use canon::{canonical_form, canonical_labeling, Labeling};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphBuilder, Matching, VertexSet, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6};
pub use invariants::{triple, InvariantTriple, SolverBudget};
