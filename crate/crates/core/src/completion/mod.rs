//! Incomplete collision graphs.
//!
//! [`solve_interleaving`] merges two sequences that share their first element
//! so that the longest constrained interval, measured in the merged sequence,
//! is as short as possible. The remaining functions are exhaustive searches
//! for small graphs: layout bandwidth, the smallest maximum degree of a
//! function-graph completion, and the double inequality relating the two.

mod bandwidth;
mod interleave;

use thiserror::Error;

pub use bandwidth::{
    bandwidth_bruteforce, bf_bruteforce, check_sandwich, BandwidthResult, CompletionResult,
    MAX_BANDWIDTH_N, MAX_COMPLETION_N,
};
pub use interleave::{
    brute_force_interleaving, feasible, merged_length, solve_interleaving, Interleaving,
    InterleavingInstance, InterleavingSolution, Sequence, MAX_ORACLE_LEN,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("{what} of size {size} exceeds the exhaustive-search limit {limit}")]
    InstanceTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}
