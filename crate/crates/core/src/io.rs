//! JSON and edge-list encodings of histories and graphs.
//!
//! History: `{"n": 3, "events": [{"u": 0, "v": 1, "t": 0.25}, ...]}`.
//! Graph: `{"n": 4, "edges": [[0, 1], [1, 2]]}`, or the text form
//!
//! ```text
//! n 4
//! 0 1
//! 1 2
//! ```

use serde::{Deserialize, Serialize};

use crate::error::InputError;
use crate::graph::CollisionGraph;
use crate::model::{CollisionEvent, ObjectId, OrderedHistory};

#[derive(Debug, Serialize, Deserialize)]
struct EventWire {
    u: ObjectId,
    v: ObjectId,
    t: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct HistoryWire {
    n: usize,
    events: Vec<EventWire>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<[ObjectId; 2]>,
}

impl Serialize for OrderedHistory {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HistoryWire {
            n: self.n(),
            events: self
                .events()
                .iter()
                .map(|e| EventWire {
                    u: e.u,
                    v: e.v,
                    t: e.time,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderedHistory {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = HistoryWire::deserialize(d)?;
        let events = wire
            .events
            .into_iter()
            .map(|e| CollisionEvent::new(e.u, e.v, e.t))
            .collect();
        OrderedHistory::new(wire.n, events).map_err(serde::de::Error::custom)
    }
}

impl Serialize for CollisionGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphWire {
            n: self.n(),
            edges: self.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CollisionGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = GraphWire::deserialize(d)?;
        CollisionGraph::new(wire.n, wire.edges.into_iter().map(|[u, v]| (u, v)))
            .map_err(serde::de::Error::custom)
    }
}

pub fn history_from_json(text: &str) -> Result<OrderedHistory, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))
}

pub fn history_to_json(h: &OrderedHistory) -> String {
    serde_json::to_string(h).expect("history serialization is infallible")
}

pub fn graph_from_json(text: &str) -> Result<CollisionGraph, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))
}

pub fn graph_to_json(g: &CollisionGraph) -> String {
    serde_json::to_string(g).expect("graph serialization is infallible")
}

/// Parses the `n <count>` header followed by one `u v` pair per line. Blank
/// lines and lines starting with `#` are skipped.
pub fn graph_from_edge_list(text: &str) -> Result<CollisionGraph, InputError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| InputError::Parse("empty edge list".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|e| InputError::Parse(format!("bad vertex count {count:?}: {e}")))?,
        _ => {
            return Err(InputError::Parse(format!(
                "expected header \"n <count>\", found {header:?}"
            )))
        }
    };
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let fields: Vec<_> = line.split_whitespace().collect();
        let [u, v] = fields.as_slice() else {
            return Err(InputError::Parse(format!(
                "line {}: expected \"u v\", found {line:?}",
                lineno + 1
            )));
        };
        let parse = |s: &str| {
            s.parse::<ObjectId>()
                .map_err(|e| InputError::Parse(format!("line {}: {e}", lineno + 1)))
        };
        edges.push((parse(u)?, parse(v)?));
    }
    CollisionGraph::new(n, edges)
}

pub fn graph_to_edge_list(g: &CollisionGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Accepts either encoding; JSON is recognized by a leading `{`.
pub fn parse_graph(text: &str) -> Result<CollisionGraph, InputError> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        graph_from_edge_list(text)
    }
}
