//! Positional inference for objects moving on a line, from the record of
//! which pairs collided.
//!
//! * [`ordered`] recovers the sequence of orderings from a time-ordered
//!   collision history.
//! * [`funcgraph`] recovers "above/below" layers from the bare collision
//!   graph.
//! * [`completion`] computes interleavings of interval families and brute-force
//!   bandwidth quantities for small graphs.
//! * [`simulate`] generates piecewise-linear trajectories together with the
//!   ground truth every recovery routine is checked against.

pub mod cli;
pub mod completion;
pub mod error;
pub mod funcgraph;
pub mod graph;
pub mod io;
pub mod model;
pub mod ordered;
pub mod simulate;

pub use error::InputError;
pub use graph::{CollisionGraph, VertexSet};
pub use model::{
    canonicalize_ordering, CollisionEvent, ContractionResult, DominanceRelation,
    LayerDecomposition, ObjectId, OrderedHistory, Ordering, OrderingTimeline,
};
