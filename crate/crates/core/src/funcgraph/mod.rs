//! Unordered collision graphs: recognition, modules and layer recovery.
//!
//! A graph of "who ever met whom" among curves on `[0, 1]` is a function
//! graph, i.e. its complement is a comparability graph. The complement's
//! transitive orientation is the "stays above" relation, and peeling its
//! maxima gives the layers. [`layer_decomposition`] recovers those layers
//! combinatorially, without building the orientation: it finds a lower bound
//! from a maximal clique ([`find_lower_bound`]) and then alternates bounded
//! expansions ([`layers_from_lower_bound`]). [`layers_via_orientation`] is
//! the independent route through the orientation itself.

mod contraction;
mod expansion;
mod layers;
mod modules;
mod recognize;

use thiserror::Error;

pub use contraction::contraction_graph;
pub use expansion::{bounded_expansion, bounded_neighborhood, BoundedExpansion};
pub use layers::{
    find_lower_bound, layer_decomposition, layers_from_lower_bound, layers_via_orientation,
};
pub use modules::{
    contract_modules, find_modules, is_module, universal_vertices, ModuleContraction,
    ModuleReport,
};
pub use recognize::{is_function_graph, recognize_function_graph, OrientationCertificate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayerError {
    #[error("the complement admits no transitive orientation; not a function graph")]
    NotFunctionGraph,
    #[error("layer stage {stage}: {reason}")]
    LayerFailure { stage: usize, reason: String },
    #[error("every maximal clique tried leaves no vertex outside its neighbourhood")]
    EmptyExterior,
    #[error("exterior components do not split into two consistent sides")]
    InconsistentSides,
    #[error("contraction graph is not an interval pattern at layer {layer}")]
    IntervalViolation { layer: usize },
    #[error("bounded expansion needs a nonempty seed")]
    EmptySeed,
}
