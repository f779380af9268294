use crate::graph::CollisionGraph;
use crate::model::{ContractionResult, LayerDecomposition};

use super::LayerError;

/// Contracts each layer to one vertex and checks that layer `i` meets exactly
/// the layers `i..=right_reach[i]`, which makes the contraction an interval
/// graph with intervals `[i, right_reach[i]]`.
pub fn contraction_graph(
    g: &CollisionGraph,
    d: &LayerDecomposition,
) -> Result<ContractionResult, LayerError> {
    let k = d.len();
    let idx = d.layer_index(g.n());
    let mut meets = vec![false; k * k];
    for &(u, v) in g.edges() {
        if let (Some(a), Some(b)) = (idx[u], idx[v]) {
            if a != b {
                meets[a * k + b] = true;
                meets[b * k + a] = true;
            }
        }
    }
    let right_reach: Vec<usize> = (0..k)
        .map(|i| (i + 1..k).rev().find(|&j| meets[i * k + j]).unwrap_or(i))
        .collect();
    for i in 0..k {
        for j in i + 1..k {
            if meets[i * k + j] != (j <= right_reach[i]) {
                return Err(LayerError::IntervalViolation { layer: i });
            }
        }
    }
    let contraction_edges = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| meets[i * k + j])
        .collect();
    Ok(ContractionResult {
        contraction_edges,
        right_reach,
    })
}
