use serde::Serialize;

use crate::funcgraph::is_function_graph;
use crate::graph::CollisionGraph;
use crate::model::ObjectId;

use super::CompletionError;

pub const MAX_BANDWIDTH_N: usize = 10;
pub const MAX_COMPLETION_N: usize = 6;

/// `witness[v]` is the slot of vertex `v` in an optimal layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandwidthResult {
    pub value: usize,
    pub witness: Vec<usize>,
}

impl BandwidthResult {
    pub fn stretch(g: &CollisionGraph, layout: &[usize]) -> usize {
        g.edges()
            .iter()
            .map(|&(u, v)| layout[u].abs_diff(layout[v]))
            .max()
            .unwrap_or(0)
    }
}

/// Cheapest function-graph completion: `value` is its maximum degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletionResult {
    pub value: usize,
    pub added: Vec<(ObjectId, ObjectId)>,
}

fn check_size(g: &CollisionGraph, limit: usize) -> Result<(), CompletionError> {
    if g.n() > limit {
        return Err(CompletionError::InstanceTooLarge {
            what: "vertex count",
            size: g.n(),
            limit,
        });
    }
    Ok(())
}

/// Minimum over layouts of the longest edge, by branch and bound over slot
/// assignments.
pub fn bandwidth_bruteforce(g: &CollisionGraph) -> Result<BandwidthResult, CompletionError> {
    check_size(g, MAX_BANDWIDTH_N)?;
    let n = g.n();
    let identity: Vec<usize> = (0..n).collect();
    let mut best = BandwidthResult {
        value: BandwidthResult::stretch(g, &identity),
        witness: identity,
    };
    if best.value == 0 {
        return Ok(best);
    }
    // order[s] is the vertex in slot s
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    place(g, &mut order, &mut used, &mut best);
    Ok(best)
}

fn place(g: &CollisionGraph, order: &mut Vec<usize>, used: &mut [bool], best: &mut BandwidthResult) {
    let n = g.n();
    let slot = order.len();
    if slot == n {
        let mut layout = vec![0; n];
        for (s, &v) in order.iter().enumerate() {
            layout[v] = s;
        }
        best.value = BandwidthResult::stretch(g, &layout);
        best.witness = layout;
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        // every edge back to an earlier slot must stay below the best so far
        let fits = order
            .iter()
            .enumerate()
            .all(|(s, &u)| !g.has_edge(u, v) || slot - s < best.value);
        if !fits {
            continue;
        }
        used[v] = true;
        order.push(v);
        place(g, order, used, best);
        order.pop();
        used[v] = false;
    }
}

/// Smallest maximum degree of a function graph containing `g`, by trying
/// degree caps upward from the maximum degree of `g` and searching the
/// missing edges under each cap.
pub fn bf_bruteforce(g: &CollisionGraph) -> Result<CompletionResult, CompletionError> {
    check_size(g, MAX_COMPLETION_N)?;
    let missing: Vec<(ObjectId, ObjectId)> = g.complement().edges().to_vec();
    let n = g.n();
    for cap in g.max_degree()..n.max(1) {
        let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut added = Vec::new();
        if extend(g.clone(), &missing, 0, cap, &mut degree, &mut added) {
            return Ok(CompletionResult { value: cap, added });
        }
    }
    unreachable!("the complete graph is a function graph")
}

fn extend(
    current: CollisionGraph,
    missing: &[(ObjectId, ObjectId)],
    next: usize,
    cap: usize,
    degree: &mut [usize],
    added: &mut Vec<(ObjectId, ObjectId)>,
) -> bool {
    if next == missing.len() {
        return is_function_graph(&current);
    }
    if extend(current.clone(), missing, next + 1, cap, degree, added) {
        return true;
    }
    let (u, v) = missing[next];
    if degree[u] < cap && degree[v] < cap {
        degree[u] += 1;
        degree[v] += 1;
        added.push((u, v));
        if extend(current.with_edge(u, v), missing, next + 1, cap, degree, added) {
            return true;
        }
        added.pop();
        degree[u] -= 1;
        degree[v] -= 1;
    }
    false
}

/// Whether `B(G)/2 <= B_f(G) <= 2 B(G)`.
pub fn check_sandwich(g: &CollisionGraph) -> Result<bool, CompletionError> {
    let b = bandwidth_bruteforce(g)?.value;
    let bf = bf_bruteforce(g)?.value;
    Ok(b <= 2 * bf && bf <= 2 * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every permutation, with no pruning.
    fn bandwidth_by_permutations(g: &CollisionGraph) -> usize {
        fn go(g: &CollisionGraph, layout: &mut Vec<usize>, best: &mut usize) {
            let n = g.n();
            if layout.len() == n {
                *best = (*best).min(BandwidthResult::stretch(g, layout));
                return;
            }
            for s in 0..n {
                if !layout.contains(&s) {
                    layout.push(s);
                    go(g, layout, best);
                    layout.pop();
                }
            }
        }
        let mut best = usize::MAX;
        go(g, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn bandwidth_examples() {
        assert_eq!(bandwidth_bruteforce(&CollisionGraph::path(6)).unwrap().value, 1);
        assert_eq!(bandwidth_bruteforce(&CollisionGraph::complete(5)).unwrap().value, 4);
        let c5 = bandwidth_bruteforce(&CollisionGraph::cycle(5)).unwrap();
        assert_eq!(c5.value, 2);
        assert_eq!(BandwidthResult::stretch(&CollisionGraph::cycle(5), &c5.witness), 2);
        assert_eq!(bandwidth_bruteforce(&CollisionGraph::empty(3)).unwrap().value, 0);
        assert!(bandwidth_bruteforce(&CollisionGraph::empty(11)).is_err());
    }

    #[test]
    fn bandwidth_matches_plain_enumeration() {
        let graphs = [
            CollisionGraph::cycle(6),
            CollisionGraph::new(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap(),
            CollisionGraph::new(6, [(0, 3), (1, 4), (2, 5), (0, 5), (1, 2)]).unwrap(),
        ];
        for g in graphs {
            let r = bandwidth_bruteforce(&g).unwrap();
            assert_eq!(r.value, bandwidth_by_permutations(&g));
            assert_eq!(BandwidthResult::stretch(&g, &r.witness), r.value);
        }
    }

    #[test]
    fn completion_examples() {
        assert_eq!(bf_bruteforce(&CollisionGraph::empty(4)).unwrap().value, 0);
        let p4 = bf_bruteforce(&CollisionGraph::path(4)).unwrap();
        assert_eq!(p4.value, 2);
        assert!(p4.added.is_empty());
        assert_eq!(bf_bruteforce(&CollisionGraph::complete(4)).unwrap().value, 3);
        let c5 = CollisionGraph::cycle(5);
        let r = bf_bruteforce(&c5).unwrap();
        let mut completed = c5.clone();
        for &(u, v) in &r.added {
            completed = completed.with_edge(u, v);
        }
        assert!(is_function_graph(&completed));
        assert_eq!(completed.max_degree(), r.value);
        assert!(r.value > 2);
        assert!(bf_bruteforce(&CollisionGraph::empty(7)).is_err());
    }

    #[test]
    fn sandwich_examples() {
        for g in [
            CollisionGraph::path(4),
            CollisionGraph::complete(4),
            CollisionGraph::cycle(5),
        ] {
            assert!(check_sandwich(&g).unwrap());
        }
    }

    #[test]
    fn completion_degree_never_drops_when_edges_are_added() {
        let g = CollisionGraph::cycle(5);
        let base = bf_bruteforce(&g).unwrap().value;
        for &(u, v) in g.complement().edges() {
            assert!(bf_bruteforce(&g.with_edge(u, v)).unwrap().value >= base);
        }
    }
}
