//! Shared domain values: collision histories, orderings, dominance and layers.
//!
//! Every value here is immutable once built; constructors validate the
//! invariants and the accessors hand out borrowed views.

use std::fmt;

use crate::error::InputError;
use crate::graph::{CollisionGraph, VertexSet};

/// Dense object index in `0..n`.
pub type ObjectId = usize;

/// One collision between two objects. Only the relative order of `time`
/// values carries meaning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionEvent {
    pub u: ObjectId,
    pub v: ObjectId,
    pub time: f64,
}

impl CollisionEvent {
    pub fn new(u: ObjectId, v: ObjectId, time: f64) -> Self {
        Self { u, v, time }
    }

    pub fn involves(&self, x: ObjectId) -> bool {
        self.u == x || self.v == x
    }
}

/// Collision events of `n` objects, strictly ordered in time.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedHistory {
    n: usize,
    events: Vec<CollisionEvent>,
}

impl OrderedHistory {
    pub fn new(n: usize, events: Vec<CollisionEvent>) -> Result<Self, InputError> {
        let mut last = f64::NEG_INFINITY;
        for (index, e) in events.iter().enumerate() {
            for id in [e.u, e.v] {
                if id >= n {
                    return Err(InputError::IdOutOfRange { id, n });
                }
            }
            if e.u == e.v {
                return Err(InputError::SelfLoop(e.u));
            }
            if !(e.time > 0.0 && e.time < 1.0) {
                return Err(InputError::TimeOutOfWindow { index, time: e.time });
            }
            if e.time <= last {
                return Err(InputError::UnsortedEvents { index, time: e.time });
            }
            last = e.time;
        }
        Ok(Self { n, events })
    }

    /// Builds a history from pairs only, spacing the times evenly in (0, 1).
    pub fn from_pairs(n: usize, pairs: &[(ObjectId, ObjectId)]) -> Result<Self, InputError> {
        let m = pairs.len() as f64;
        let events = pairs
            .iter()
            .enumerate()
            .map(|(k, &(u, v))| CollisionEvent::new(u, v, (k as f64 + 1.0) / (m + 1.0)))
            .collect();
        Self::new(n, events)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn events(&self) -> &[CollisionEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn pairs(&self) -> Vec<(ObjectId, ObjectId)> {
        self.events.iter().map(|e| (e.u, e.v)).collect()
    }

    /// The first `k` collisions.
    pub fn prefix(&self, k: usize) -> Self {
        Self {
            n: self.n,
            events: self.events[..k.min(self.events.len())].to_vec(),
        }
    }

    pub fn underlying_graph(&self) -> CollisionGraph {
        CollisionGraph::from_history(self)
    }
}

/// A bottom-to-top arrangement of all objects.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordering(Vec<ObjectId>);

impl Ordering {
    pub fn new(seq: Vec<ObjectId>) -> Result<Self, InputError> {
        let n = seq.len();
        let mut seen = vec![false; n];
        for &x in &seq {
            if x >= n || seen[x] {
                return Err(InputError::NotAPermutation {
                    n,
                    detail: format!("id {x} repeated or out of range"),
                });
            }
            seen[x] = true;
        }
        Ok(Self(seq))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub(crate) fn from_vec_unchecked(seq: Vec<ObjectId>) -> Self {
        Self(seq)
    }

    pub fn as_slice(&self) -> &[ObjectId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<ObjectId> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// Lexicographic minimum of the sequence and its reversal.
    pub fn canonical(&self) -> Self {
        let rev = self.reversed();
        if rev < *self {
            rev
        } else {
            self.clone()
        }
    }

    /// `pos[id]` is the index of `id` in the sequence.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            pos[x] = i;
        }
        pos
    }

    /// Swaps `u` and `v` if they sit next to each other; returns whether they did.
    pub fn swap_adjacent(&mut self, u: ObjectId, v: ObjectId) -> bool {
        let i = self.0.iter().position(|&x| x == u);
        let j = self.0.iter().position(|&x| x == v);
        match (i, j) {
            (Some(i), Some(j)) if i.abs_diff(j) == 1 => {
                self.0.swap(i, j);
                true
            }
            _ => false,
        }
    }

    /// The subsequence made of members of `keep`, in order.
    pub fn restricted_to(&self, keep: &VertexSet) -> Vec<ObjectId> {
        self.0.iter().copied().filter(|x| keep.contains(x)).collect()
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographically smaller of `seq` and its reversal.
pub fn canonicalize_ordering(seq: &Ordering) -> Ordering {
    seq.canonical()
}

/// The arrangements `p_0, ..., p_m` before the first and after each collision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingTimeline {
    orderings: Vec<Ordering>,
}

impl OrderingTimeline {
    pub fn new(orderings: Vec<Ordering>) -> Self {
        Self { orderings }
    }

    pub fn orderings(&self) -> &[Ordering] {
        &self.orderings
    }

    pub fn first(&self) -> Option<&Ordering> {
        self.orderings.first()
    }

    pub fn last(&self) -> Option<&Ordering> {
        self.orderings.last()
    }

    pub fn len(&self) -> usize {
        self.orderings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orderings.is_empty()
    }

    /// Every ordering reversed at once.
    pub fn reversed(&self) -> Self {
        Self {
            orderings: self.orderings.iter().map(Ordering::reversed).collect(),
        }
    }

    /// Picks the global orientation under which the final ordering is
    /// canonical.
    pub fn canonical(&self) -> Self {
        match self.orderings.last() {
            Some(last) if last.reversed() < *last => self.reversed(),
            _ => self.clone(),
        }
    }

    /// Checks that consecutive orderings differ exactly by the adjacent
    /// transposition of the corresponding event's endpoints.
    pub fn follows(&self, history: &OrderedHistory) -> bool {
        if self.orderings.len() != history.len() + 1 {
            return false;
        }
        self.orderings.windows(2).zip(history.events()).all(|(w, e)| {
            let mut prev = w[0].clone();
            prev.swap_adjacent(e.u, e.v) && prev == w[1]
        })
    }
}

/// Strict "stays above" relation: `dominates(u, v)` means `u` is above `v`
/// for the whole observation window.
#[derive(Clone, PartialEq, Eq)]
pub struct DominanceRelation {
    n: usize,
    above: Vec<bool>,
}

impl fmt::Debug for DominanceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DominanceRelation")
            .field("n", &self.n)
            .field("pairs", &self.pairs())
            .finish()
    }
}

impl DominanceRelation {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            above: vec![false; n * n],
        }
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, InputError>
    where
        I: IntoIterator<Item = (ObjectId, ObjectId)>,
    {
        let mut d = Self::empty(n);
        for (u, v) in pairs {
            for id in [u, v] {
                if id >= n {
                    return Err(InputError::IdOutOfRange { id, n });
                }
            }
            d.above[u * n + v] = true;
        }
        Ok(d)
    }

    pub(crate) fn insert(&mut self, u: ObjectId, v: ObjectId) {
        self.above[u * self.n + v] = true;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dominates(&self, u: ObjectId, v: ObjectId) -> bool {
        self.above[u * self.n + v]
    }

    pub fn pairs(&self) -> Vec<(ObjectId, ObjectId)> {
        let n = self.n;
        (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.dominates(u, v))
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let mut d = Self::empty(self.n);
        for (u, v) in self.pairs() {
            d.insert(v, u);
        }
        d
    }

    /// Irreflexive, antisymmetric and transitive.
    pub fn is_strict_partial_order(&self) -> bool {
        let n = self.n;
        for u in 0..n {
            if self.dominates(u, u) {
                return false;
            }
            for v in 0..n {
                if !self.dominates(u, v) {
                    continue;
                }
                if self.dominates(v, u) {
                    return false;
                }
                if (0..n).any(|w| self.dominates(v, w) && !self.dominates(u, w)) {
                    return false;
                }
            }
        }
        true
    }

    /// No dominance pair is also a collision.
    pub fn is_complement_consistent(&self, g: &CollisionGraph) -> bool {
        self.pairs().into_iter().all(|(u, v)| !g.has_edge(u, v))
    }

    /// Every non-colliding pair is ordered one way or the other.
    pub fn covers_complement(&self, g: &CollisionGraph) -> bool {
        (0..self.n).all(|u| {
            (u + 1..self.n)
                .all(|v| g.has_edge(u, v) || self.dominates(u, v) || self.dominates(v, u))
        })
    }

    /// Members of `set` that nothing in `set` dominates.
    pub fn max_of(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .copied()
            .filter(|&v| !set.iter().any(|&u| self.dominates(u, v)))
            .collect()
    }

    /// Members of `set` that dominate nothing in `set`.
    pub fn min_of(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .copied()
            .filter(|&v| !set.iter().any(|&u| self.dominates(v, u)))
            .collect()
    }

    /// Repeatedly peels `Max` off `set`, top layer first.
    pub fn peel_layers(&self, set: &VertexSet) -> LayerDecomposition {
        let mut rest = set.clone();
        let mut layers = Vec::new();
        while !rest.is_empty() {
            let top = self.max_of(&rest);
            debug_assert!(!top.is_empty(), "a strict partial order always has maxima");
            rest.retain(|v| !top.contains(v));
            layers.push(top);
        }
        LayerDecomposition::new(layers)
    }
}

/// Ordered partition of a vertex set into layers, top first.
///
/// `stage_universals[i]` lists the vertices that were adjacent to everything
/// still unpeeled when layer `i` was formed and were absorbed into it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LayerDecomposition {
    pub layers: Vec<VertexSet>,
    pub stage_universals: Vec<VertexSet>,
}

impl LayerDecomposition {
    pub fn new(layers: Vec<VertexSet>) -> Self {
        let stage_universals = vec![VertexSet::new(); layers.len()];
        Self {
            layers,
            stage_universals,
        }
    }

    pub fn with_universals(layers: Vec<VertexSet>, stage_universals: Vec<VertexSet>) -> Self {
        debug_assert_eq!(layers.len(), stage_universals.len());
        Self {
            layers,
            stage_universals,
        }
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        self.layers.iter().flatten().copied().collect()
    }

    /// The order the layers encode: `u > v` for every non-adjacent pair with
    /// `u` in the earlier layer.
    pub fn dominance(&self, g: &CollisionGraph) -> DominanceRelation {
        let idx = self.layer_index(g.n());
        let mut d = DominanceRelation::empty(g.n());
        for u in 0..g.n() {
            for v in 0..g.n() {
                if let (Some(a), Some(b)) = (idx[u], idx[v]) {
                    if a < b && !g.has_edge(u, v) {
                        d.insert(u, v);
                    }
                }
            }
        }
        d
    }

    /// Fills `stage_universals` with the vertices of each layer adjacent to
    /// everything at or below it.
    pub fn annotate_universals(mut self, g: &CollisionGraph) -> Self {
        let mut rest = self.vertices();
        self.stage_universals = self
            .layers
            .iter()
            .map(|layer| {
                let u = layer
                    .iter()
                    .copied()
                    .filter(|&x| rest.iter().all(|&y| y == x || g.has_edge(x, y)))
                    .collect();
                rest.retain(|v| !layer.contains(v));
                u
            })
            .collect();
        self
    }

    /// Layers of the same realization turned upside down: the encoded order
    /// reversed and peeled again.
    pub fn flipped(&self, g: &CollisionGraph) -> Self {
        self.dominance(g)
            .reversed()
            .peel_layers(&self.vertices())
            .annotate_universals(g)
    }

    /// Smaller of the decomposition and its flip, comparing layer lists
    /// lexicographically.
    pub fn canonical(&self, g: &CollisionGraph) -> Self {
        let flip = self.flipped(g);
        if flip.layers < self.layers {
            flip
        } else {
            self.clone()
        }
    }

    /// Equal layer lists, up to turning the realization upside down.
    pub fn same_layers(&self, other: &Self, g: &CollisionGraph) -> bool {
        self.canonical(g).layers == other.canonical(g).layers
    }

    /// `index[v]` is the layer of `v`, or `None` if `v` is not covered.
    pub fn layer_index(&self, n: usize) -> Vec<Option<usize>> {
        let mut idx = vec![None; n];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                idx[v] = Some(i);
            }
        }
        idx
    }

    /// Disjoint, nonempty, and covering exactly `set`.
    pub fn partitions(&self, set: &VertexSet) -> bool {
        let total: usize = self.layers.iter().map(|l| l.len()).sum();
        self.layers.iter().all(|l| !l.is_empty())
            && total == set.len()
            && self.vertices() == *set
    }

    /// Each layer is a maximal clique of the graph induced on the layers at
    /// and below it.
    pub fn layers_are_residual_maximal_cliques(&self, g: &CollisionGraph) -> bool {
        let mut rest = self.vertices();
        for layer in &self.layers {
            if !g.is_maximal_clique_within(layer, &rest) {
                return false;
            }
            rest.retain(|v| !layer.contains(v));
        }
        true
    }

    /// For every edge from layer `l` to layer `r > l` and every `l < i < r`,
    /// the upper endpoint has a neighbour in layer `i`.
    pub fn satisfies_spanning_edge_property(&self, g: &CollisionGraph) -> bool {
        let idx = self.layer_index(g.n());
        g.edges().iter().all(|&(a, b)| {
            let (Some(ia), Some(ib)) = (idx[a], idx[b]) else {
                return true;
            };
            let (upper, lo, hi) = if ia <= ib { (a, ia, ib) } else { (b, ib, ia) };
            (lo + 1..hi).all(|i| self.layers[i].iter().any(|&w| g.has_edge(upper, w)))
        })
    }
}

/// Layers contracted to single vertices.
///
/// Layer indices are zero-based; `right_reach[i]` is the largest `j` such
/// that some edge joins layer `i` and layer `j` (`i` itself when none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionResult {
    pub contraction_edges: Vec<(usize, usize)>,
    pub right_reach: Vec<usize>,
}

impl ContractionResult {
    /// The interval `[i, right_reach[i]]` of every layer.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        self.right_reach.iter().enumerate().map(|(i, &r)| (i, r)).collect()
    }

    /// The contraction graph itself, over layer indices.
    pub fn graph(&self) -> CollisionGraph {
        CollisionGraph::new(self.right_reach.len(), self.contraction_edges.iter().copied())
            .expect("contraction edges are within range")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph contraction {\n");
        for (i, r) in self.intervals() {
            out.push_str(&format!("  {i} [label=\"{i}: [{i}, {r}]\"];\n"));
        }
        for &(i, j) in &self.contraction_edges {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}
