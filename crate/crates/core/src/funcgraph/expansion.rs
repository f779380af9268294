use crate::graph::{CollisionGraph, VertexSet};

use super::LayerError;

/// Outsiders `v` with a witness `u` inside and `w` outside such that `uv` is
/// an edge while `uw` and `vw` are not.
pub fn bounded_neighborhood(g: &CollisionGraph, s: &VertexSet) -> VertexSet {
    bounded_neighborhood_within(g, &g.vertices(), s)
}

pub(crate) fn bounded_neighborhood_within(
    g: &CollisionGraph,
    within: &VertexSet,
    s: &VertexSet,
) -> VertexSet {
    let outside: Vec<_> = within.iter().copied().filter(|v| !s.contains(v)).collect();
    outside
        .iter()
        .copied()
        .filter(|&v| {
            s.iter().any(|&u| {
                g.has_edge(u, v)
                    && outside
                        .iter()
                        .any(|&w| w != v && !g.has_edge(u, w) && !g.has_edge(v, w))
            })
        })
        .collect()
}

/// The chain `W_0 ⊂ W_1 ⊂ ... ⊂ W_k` of bounded expansions from a seed and
/// the vertices it never reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedExpansion {
    pub chain: Vec<VertexSet>,
    pub unreached: VertexSet,
}

pub fn bounded_expansion(g: &CollisionGraph, seed: &VertexSet) -> Result<BoundedExpansion, LayerError> {
    bounded_expansion_within(g, &g.vertices(), seed)
}

pub(crate) fn bounded_expansion_within(
    g: &CollisionGraph,
    within: &VertexSet,
    seed: &VertexSet,
) -> Result<BoundedExpansion, LayerError> {
    if seed.is_empty() {
        return Err(LayerError::EmptySeed);
    }
    let mut current: VertexSet = seed.intersection(within).copied().collect();
    let mut chain = vec![current.clone()];
    loop {
        let grow = bounded_neighborhood_within(g, within, &current);
        if grow.is_empty() {
            break;
        }
        current.extend(grow);
        chain.push(current.clone());
    }
    let unreached = within.difference(&current).copied().collect();
    Ok(BoundedExpansion { chain, unreached })
}
