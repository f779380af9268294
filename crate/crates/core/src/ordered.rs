//! Exact recovery of orderings from a time-ordered collision history.
//!
//! Two independent routes produce the same timeline:
//!
//! * [`recover_end_position`] replays the history forward, keeping one
//!   ordered chain per connected component. A collision inside a chain swaps
//!   two neighbours; a collision across chains glues the chains end to end so
//!   the colliding objects meet at the seam, then swaps them.
//!   [`recover_timeline`] then walks the history backwards from the final
//!   arrangement, undoing one swap per event.
//! * [`swap_transform`] relabels every later event after each collision so
//!   that the two curves touch instead of crossing. The relabelled history
//!   never changes order, its collision graph is a path, and the positions can
//!   be read straight off that path. [`recover_timeline_by_swapping`] reads
//!   them and undoes the relabelling.
//!
//! Both routes are unique only up to one global reversal; results are
//! reported in the orientation where the final ordering is lexicographically
//! smallest.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::VertexSet;
use crate::model::{ObjectId, OrderedHistory, Ordering, OrderingTimeline};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecoveryError {
    /// No arrangement of the objects can produce this history.
    #[error("event {index} ({u}, {v}) cannot be realized: {reason}")]
    InvalidHistory {
        index: usize,
        u: ObjectId,
        v: ObjectId,
        reason: String,
    },
    /// The collision graph has several components, so their relative
    /// positions are not determined.
    #[error("collision graph has {components} components; orderings are not unique")]
    NotConnected { components: usize },
}

/// Final arrangement of each connected component, up to reversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentOrdering {
    sequences: Vec<Vec<ObjectId>>,
    owner: Vec<usize>,
}

impl ComponentOrdering {
    fn new(mut sequences: Vec<Vec<ObjectId>>, n: usize) -> Self {
        for seq in &mut sequences {
            let rev: Vec<_> = seq.iter().rev().copied().collect();
            if rev < *seq {
                *seq = rev;
            }
        }
        sequences.sort_by_key(|s| s.iter().copied().min());
        let mut owner = vec![0; n];
        for (c, seq) in sequences.iter().enumerate() {
            for &x in seq {
                owner[x] = c;
            }
        }
        Self { sequences, owner }
    }

    /// Canonical sequences, listed by smallest member.
    pub fn sequences(&self) -> &[Vec<ObjectId>] {
        &self.sequences
    }

    pub fn component_count(&self) -> usize {
        self.sequences.len()
    }

    /// The canonical sequence containing `id`.
    pub fn sequence_of(&self, id: ObjectId) -> &[ObjectId] {
        &self.sequences[self.owner[id]]
    }

    pub fn members(&self, component: usize) -> VertexSet {
        self.sequences[component].iter().copied().collect()
    }
}

/// A component's objects in storage order. Slots are numbered consecutively
/// from `front_key`, so pushing at either end never renumbers the rest.
#[derive(Debug)]
struct Chain {
    items: VecDeque<ObjectId>,
    front_key: i64,
}

impl Chain {
    fn back_key(&self) -> i64 {
        self.front_key + self.items.len() as i64 - 1
    }
}

#[derive(Debug)]
struct Chains {
    chain_of: Vec<usize>,
    key: Vec<i64>,
    chains: Vec<Chain>,
}

enum End {
    Front,
    Back,
}

impl Chains {
    fn singletons(n: usize) -> Self {
        Self {
            chain_of: (0..n).collect(),
            key: vec![0; n],
            chains: (0..n)
                .map(|x| Chain {
                    items: VecDeque::from([x]),
                    front_key: 0,
                })
                .collect(),
        }
    }

    fn end_of(&self, x: ObjectId) -> Option<End> {
        let chain = &self.chains[self.chain_of[x]];
        if self.key[x] == chain.back_key() {
            Some(End::Back)
        } else if self.key[x] == chain.front_key {
            Some(End::Front)
        } else {
            None
        }
    }

    fn swap(&mut self, u: ObjectId, v: ObjectId) {
        let chain = &mut self.chains[self.chain_of[u]];
        let i = (self.key[u] - chain.front_key) as usize;
        let j = (self.key[v] - chain.front_key) as usize;
        chain.items.swap(i, j);
        self.key.swap(u, v);
    }

    /// Attaches the chain holding `v` to the chain holding `u` so that `u`
    /// and `v` become neighbours. Both must sit at an end of their chain.
    fn join(&mut self, u: ObjectId, v: ObjectId) -> Result<(), &'static str> {
        let (Some(u_end), Some(v_end)) = (self.end_of(u), self.end_of(v)) else {
            return Err("endpoint is interior to its component");
        };
        let (host, host_end, guest, guest_end) =
            if self.chains[self.chain_of[u]].items.len() >= self.chains[self.chain_of[v]].items.len()
            {
                (u, u_end, v, v_end)
            } else {
                (v, v_end, u, u_end)
            };
        let host_id = self.chain_of[host];
        let guest_id = self.chain_of[guest];
        let guest_items = std::mem::take(&mut self.chains[guest_id].items);
        // Walk the guest starting at the colliding object, away from the seam.
        let walk: Vec<ObjectId> = match guest_end {
            End::Front => guest_items.into_iter().collect(),
            End::Back => guest_items.into_iter().rev().collect(),
        };
        let chain = &mut self.chains[host_id];
        for x in walk {
            match host_end {
                End::Back => {
                    self.key[x] = chain.back_key() + 1;
                    chain.items.push_back(x);
                }
                End::Front => {
                    chain.front_key -= 1;
                    self.key[x] = chain.front_key;
                    chain.items.push_front(x);
                }
            }
            self.chain_of[x] = host_id;
        }
        Ok(())
    }

    fn sequences(&self) -> Vec<Vec<ObjectId>> {
        self.chains
            .iter()
            .filter(|c| !c.items.is_empty())
            .map(|c| c.items.iter().copied().collect())
            .collect()
    }
}

/// Replays the history forward and returns each component's final
/// arrangement.
pub fn recover_end_position(h: &OrderedHistory) -> Result<ComponentOrdering, RecoveryError> {
    let mut chains = Chains::singletons(h.n());
    for (index, e) in h.events().iter().enumerate() {
        let invalid = |reason: &str| RecoveryError::InvalidHistory {
            index,
            u: e.u,
            v: e.v,
            reason: reason.to_string(),
        };
        if chains.chain_of[e.u] == chains.chain_of[e.v] {
            if (chains.key[e.u] - chains.key[e.v]).abs() != 1 {
                return Err(invalid("objects of one component collide without being neighbours"));
            }
        } else {
            chains.join(e.u, e.v).map_err(invalid)?;
        }
        chains.swap(e.u, e.v);
    }
    Ok(ComponentOrdering::new(chains.sequences(), h.n()))
}

fn require_connected(h: &OrderedHistory) -> Result<(), RecoveryError> {
    let components = h.underlying_graph().components().len();
    if components != 1 {
        return Err(RecoveryError::NotConnected { components });
    }
    Ok(())
}

/// Full timeline `p_0, ..., p_m`, obtained by undoing the events one by one
/// from the recovered end position.
pub fn recover_timeline(h: &OrderedHistory) -> Result<OrderingTimeline, RecoveryError> {
    let end = recover_end_position(h)?;
    require_connected(h)?;
    let mut current = Ordering::from_vec_unchecked(end.sequences()[0].clone());
    let mut orderings = vec![current.clone()];
    for (index, e) in h.events().iter().enumerate().rev() {
        if !current.swap_adjacent(e.u, e.v) {
            return Err(RecoveryError::InvalidHistory {
                index,
                u: e.u,
                v: e.v,
                reason: "objects not adjacent when undoing the collision".into(),
            });
        }
        orderings.push(current.clone());
    }
    orderings.reverse();
    Ok(OrderingTimeline::new(orderings).canonical())
}

/// One relabelling applied by [`swap_transform`]: event `index`, as it reads
/// after all earlier relabellings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapEntry {
    pub index: usize,
    pub pair: (ObjectId, ObjectId),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SwapRecord {
    pub entries: Vec<SwapEntry>,
}

/// Turns every crossing into a touch: after event `k` between `u` and `v`,
/// `u` and `v` exchange roles in every later event. Times are kept.
pub fn swap_transform(h: &OrderedHistory) -> (OrderedHistory, SwapRecord) {
    // label[x]: what original object x is called in the transformed history
    let mut label: Vec<ObjectId> = (0..h.n()).collect();
    let mut events = Vec::with_capacity(h.len());
    let mut record = SwapRecord::default();
    for (index, e) in h.events().iter().enumerate() {
        let pair = (label[e.u], label[e.v]);
        events.push(crate::model::CollisionEvent::new(pair.0, pair.1, e.time));
        record.entries.push(SwapEntry { index, pair });
        label.swap(e.u, e.v);
    }
    let transformed =
        OrderedHistory::new(h.n(), events).expect("relabelling preserves validity");
    (transformed, record)
}

/// Timeline via [`swap_transform`]: the transformed objects never change
/// order, so their arrangement is the path of the transformed collision
/// graph; the original arrangement after event `k` is that path read through
/// the inverse of the first `k` relabellings.
pub fn recover_timeline_by_swapping(h: &OrderedHistory) -> Result<OrderingTimeline, RecoveryError> {
    require_connected(h)?;
    let (transformed, record) = swap_transform(h);
    let still = transformed.underlying_graph().path_order().ok_or_else(|| {
        let (index, u, v) = h
            .events()
            .last()
            .map_or((0, 0, 0), |e| (h.len() - 1, e.u, e.v));
        RecoveryError::InvalidHistory {
            index,
            u,
            v,
            reason: "touching curves do not form a path".into(),
        }
    })?;

    // original[label] after all relabellings
    let mut original: Vec<ObjectId> = (0..h.n()).collect();
    for entry in &record.entries {
        original.swap(entry.pair.0, entry.pair.1);
    }
    let read = |original: &[ObjectId]| {
        Ordering::from_vec_unchecked(still.iter().map(|&l| original[l]).collect())
    };
    let mut orderings = vec![read(&original)];
    for entry in record.entries.iter().rev() {
        original.swap(entry.pair.0, entry.pair.1);
        orderings.push(read(&original));
    }
    orderings.reverse();
    Ok(OrderingTimeline::new(orderings).canonical())
}
