//! Simple undirected collision graphs over dense object ids.
//!
//! Graphs in this crate are small (tens of vertices at most in any exhaustive
//! routine), so adjacency is kept as a dense boolean matrix next to a sorted
//! edge list. Vertex subsets are passed around as [`VertexSet`]s, which keeps
//! every iteration order deterministic.

use std::collections::{BTreeSet, VecDeque};

use crate::error::InputError;
use crate::model::{ObjectId, OrderedHistory};

pub type VertexSet = BTreeSet<ObjectId>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CollisionGraph {
    n: usize,
    adj: Vec<bool>,
    edges: Vec<(ObjectId, ObjectId)>,
}

impl std::fmt::Debug for CollisionGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CollisionGraph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl CollisionGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..n {
            g.insert(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n > 2 {
            g.insert(0, n - 1);
        }
        g
    }

    /// Builds a graph from an edge list. Repeated pairs are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, InputError>
    where
        I: IntoIterator<Item = (ObjectId, ObjectId)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(InputError::IdOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(InputError::SelfLoop(u));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// The simple graph underlying a history: time labels dropped, repeat
    /// collisions merged.
    pub fn from_history(history: &OrderedHistory) -> Self {
        let mut g = Self::empty(history.n());
        for e in history.events() {
            g.insert(e.u, e.v);
        }
        g
    }

    fn insert(&mut self, u: ObjectId, v: ObjectId) {
        if self.adj[u * self.n + v] {
            return;
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        let e = (u.min(v), u.max(v));
        let at = self.edges.binary_search(&e).unwrap_err();
        self.edges.insert(at, e);
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, u: ObjectId, v: ObjectId) -> Self {
        let mut g = self.clone();
        g.insert(u, v);
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(ObjectId, ObjectId)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: ObjectId, v: ObjectId) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: ObjectId) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.n).filter(move |&u| self.adj[v * self.n + u])
    }

    pub fn degree(&self, v: ObjectId) -> usize {
        self.neighbors(v).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        (0..self.n).collect()
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    /// Connected components of the subgraph induced on `within`, each sorted,
    /// listed by smallest member.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &start in within {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                comp.insert(x);
                for &y in within {
                    if !seen[y] && self.has_edge(x, y) {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Components of the complement graph restricted to `within`.
    pub fn co_components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &start in within {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                comp.insert(x);
                for &y in within {
                    if !seen[y] && y != x && !self.has_edge(x, y) {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True iff the graph has exactly one connected component. A graph on a
    /// single vertex is connected; the graph on zero vertices is not.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|&u| set.range(u + 1..).all(|&v| self.has_edge(u, v)))
    }

    /// A clique in `within` that no vertex of `within` extends.
    pub fn is_maximal_clique_within(&self, set: &VertexSet, within: &VertexSet) -> bool {
        self.is_clique(set)
            && within
                .iter()
                .filter(|v| !set.contains(v))
                .all(|&v| set.iter().any(|&u| !self.has_edge(u, v)))
    }

    /// Induced subgraph on `set`, relabelled densely. The returned vector maps
    /// new ids back to the original ones.
    pub fn induced(&self, set: &VertexSet) -> (CollisionGraph, Vec<ObjectId>) {
        let back: Vec<ObjectId> = set.iter().copied().collect();
        let mut g = Self::empty(back.len());
        for (i, &u) in back.iter().enumerate() {
            for (j, &v) in back.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert(i, j);
                }
            }
        }
        (g, back)
    }

    /// True iff the graph is a simple path through all of its vertices.
    pub fn is_path(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.is_connected()
            && self.edges.len() == self.n - 1
            && (0..self.n).all(|v| self.degree(v) <= 2)
    }

    /// The vertex order along a path graph, starting from the lower-id end.
    pub fn path_order(&self) -> Option<Vec<ObjectId>> {
        if !self.is_path() {
            return None;
        }
        if self.n == 1 {
            return Some(vec![0]);
        }
        let start = (0..self.n).find(|&v| self.degree(v) == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < self.n {
            let next = self.neighbors(cur).find(|&x| x != prev)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// Graphviz text with one `u -- v` line per edge.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}
