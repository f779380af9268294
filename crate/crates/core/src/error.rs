use thiserror::Error;

/// Malformed input: bad ids, unsorted events, unparsable files.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum InputError {
    #[error("object id {id} out of range for n = {n}")]
    IdOutOfRange { id: usize, n: usize },
    #[error("self loop on object {0}")]
    SelfLoop(usize),
    #[error("event {index} has time {time}, outside the open window (0, 1)")]
    TimeOutOfWindow { index: usize, time: f64 },
    #[error("event {index} at time {time} does not come strictly after the previous event")]
    UnsortedEvents { index: usize, time: f64 },
    #[error("not a permutation of 0..{n}: {detail}")]
    NotAPermutation { n: usize, detail: String },
    #[error("interval [{start}, {end}] invalid for a sequence of length {len}")]
    BadInterval { start: usize, end: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
