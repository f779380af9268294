//! Layer recovery from an unordered collision graph.

use crate::graph::{CollisionGraph, VertexSet};
use crate::model::{DominanceRelation, LayerDecomposition};

use super::expansion::bounded_expansion_within;
use super::modules::{find_modules, universal_within};
use super::recognize::recognize_function_graph;
use super::LayerError;

/// Greedy maximal clique: start at `start`, then take every vertex (in id
/// order) adjacent to all vertices taken so far.
fn greedy_clique(g: &CollisionGraph, start: usize) -> VertexSet {
    let mut clique: VertexSet = [start].into();
    for v in 0..g.n() {
        if v != start && clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.insert(v);
        }
    }
    clique
}

/// A set of vertices that lies entirely below everything it does not meet,
/// in one of the two orientations of the graph.
///
/// Grows a maximal clique, drops it and its neighbourhood, and splits the
/// components of what is left into the side below the clique and the side
/// above it: two components are on the same side exactly when some
/// neighbour of the clique touches both. The side holding the lowest-id
/// component is returned. Expects a connected graph without universal
/// vertices or modules.
pub fn find_lower_bound(g: &CollisionGraph) -> Result<VertexSet, LayerError> {
    for start in 0..g.n() {
        let clique = greedy_clique(g, start);
        let neighbours: VertexSet = (0..g.n())
            .filter(|v| !clique.contains(v))
            .filter(|&v| clique.iter().any(|&u| g.has_edge(u, v)))
            .collect();
        let exterior: VertexSet = (0..g.n())
            .filter(|v| !clique.contains(v) && !neighbours.contains(v))
            .collect();
        if exterior.is_empty() {
            continue;
        }
        let comps = g.components_within(&exterior);
        let touches = |c: &VertexSet, v: usize| c.iter().any(|&x| g.has_edge(x, v));
        let share = |i: usize, j: usize| {
            neighbours
                .iter()
                .any(|&v| touches(&comps[i], v) && touches(&comps[j], v))
        };
        let side: Vec<bool> = (0..comps.len()).map(|j| j == 0 || share(0, j)).collect();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                if share(i, j) != (side[i] == side[j]) {
                    return Err(LayerError::InconsistentSides);
                }
            }
        }
        return Ok(comps
            .iter()
            .zip(&side)
            .filter(|(_, &s)| s)
            .flat_map(|(c, _)| c.iter().copied())
            .collect());
    }
    Err(LayerError::EmptyExterior)
}

/// Peels layers top-down from a lower bound that avoids the top layer.
///
/// Each stage strips the vertices adjacent to everything still unpeeled
/// (they join the stage's layer), takes the vertices the bounded expansion of
/// the seed never reaches as the layer, and seeds the next stage with what
/// the layer's own expansion never reaches. Whatever is left once it forms
/// a clique becomes the last layer.
///
/// What is left after peeling can contain modules even when `g` is prime.
/// The unreached set may then hold vertices that lie below one another, or
/// the seed may reach everything; either way the stage falls back to
/// [`undominated`].
pub fn layers_from_lower_bound(
    g: &CollisionGraph,
    lower_bound: &VertexSet,
) -> Result<LayerDecomposition, LayerError> {
    if lower_bound.is_empty() {
        return Err(LayerError::EmptySeed);
    }
    let mut rest = g.vertices();
    let mut seed = lower_bound.clone();
    let mut peeled = VertexSet::new();
    let mut layers = Vec::new();
    let mut universals = Vec::new();
    while !rest.is_empty() {
        let stage = layers.len();
        let universal = universal_within(g, &rest);
        if g.is_clique(&rest) {
            layers.push(std::mem::take(&mut rest));
            universals.push(universal);
            break;
        }
        let core: VertexSet = rest.difference(&universal).copied().collect();
        let seed_core: VertexSet = seed.intersection(&core).copied().collect();
        let top = if seed_core.is_empty() {
            VertexSet::new()
        } else {
            bounded_expansion_within(g, &core, &seed_core)?.unreached
        };
        let mut layer: VertexSet = top.union(&universal).copied().collect();
        if top.is_empty() || !g.is_maximal_clique_within(&layer, &rest) {
            // the seed ran out or was not a lower bound of what is left
            layer = undominated(g, &peeled, &rest)
                .map_err(|reason| LayerError::LayerFailure { stage, reason })?;
            if !g.is_maximal_clique_within(&layer, &rest) {
                return Err(LayerError::LayerFailure {
                    stage,
                    reason: format!("{layer:?} is not a maximal clique of the remaining graph"),
                });
            }
        }
        let layer_core: VertexSet = layer.intersection(&core).copied().collect();
        seed = bounded_expansion_within(g, &core, &layer_core)?.unreached;
        rest.retain(|v| !layer.contains(v));
        peeled.extend(layer.iter().copied());
        layers.push(layer);
        universals.push(universal);
    }
    Ok(LayerDecomposition::with_universals(layers, universals))
}

/// The vertices of `rest` that nothing in `rest` lies above.
///
/// Every peeled vertex lies above the non-neighbours it leaves behind. These
/// comparisons are spread by implication forcing: `a > b` forces `a > c` when
/// `bc` is an edge and `ac` is not, and `c > b` when `ac` is an edge and `bc`
/// is not. In a prime graph a single comparison forces all the others.
fn undominated(g: &CollisionGraph, peeled: &VertexSet, rest: &VertexSet) -> Result<VertexSet, String> {
    let n = g.n();
    let mut above = vec![false; n * n];
    let mut queue = Vec::new();
    let settle = |a: usize, b: usize, above: &mut Vec<bool>, queue: &mut Vec<(usize, usize)>| {
        if above[b * n + a] {
            return Err(format!("{a} and {b} are forced both ways"));
        }
        if !above[a * n + b] {
            above[a * n + b] = true;
            queue.push((a, b));
        }
        Ok(())
    };
    for &p in peeled {
        for &x in rest {
            if !g.has_edge(p, x) {
                settle(p, x, &mut above, &mut queue)?;
            }
        }
    }
    while let Some((a, b)) = queue.pop() {
        for c in 0..n {
            if c == a || c == b {
                continue;
            }
            if g.has_edge(b, c) && !g.has_edge(a, c) {
                settle(a, c, &mut above, &mut queue)?;
            }
            if g.has_edge(a, c) && !g.has_edge(b, c) {
                settle(c, b, &mut above, &mut queue)?;
            }
        }
    }
    for &x in rest {
        for &y in rest {
            if x < y && !g.has_edge(x, y) && !above[x * n + y] && !above[y * n + x] {
                return Err(format!("no comparison settles {x} against {y}"));
            }
        }
    }
    Ok(rest
        .iter()
        .copied()
        .filter(|&x| !rest.iter().any(|&y| above[y * n + x]))
        .collect())
}

/// Layers by peeling maxima of the complement's transitive orientation.
pub fn layers_via_orientation(g: &CollisionGraph) -> Result<LayerDecomposition, LayerError> {
    let cert = recognize_function_graph(g).ok_or(LayerError::NotFunctionGraph)?;
    Ok(cert
        .dominance()
        .peel_layers(&g.vertices())
        .annotate_universals(g)
        .canonical(g))
}

/// Layers of every connected component, listed by smallest member.
///
/// Components are handled independently since their relative position is
/// not observable. Within a component an order is assembled bottom-up: the
/// prime pieces get theirs from [`find_lower_bound`] and
/// [`layers_from_lower_bound`], and disjoint unions, joins and modules combine
/// the orders of their parts. The layers are then peeled from that order.
/// On a prime component the result is exactly the layers of the two-step
/// procedure.
pub fn layer_decomposition(g: &CollisionGraph) -> Result<Vec<LayerDecomposition>, LayerError> {
    if recognize_function_graph(g).is_none() {
        return Err(LayerError::NotFunctionGraph);
    }
    g.components()
        .iter()
        .map(|comp| {
            let mut order = DominanceRelation::empty(g.n());
            orient(g, comp, &mut order)?;
            if !order.is_strict_partial_order() || !order.is_complement_consistent(g) {
                return Err(LayerError::LayerFailure {
                    stage: 0,
                    reason: "assembled order is not transitive".into(),
                });
            }
            Ok(order.peel_layers(comp).annotate_universals(g).canonical(g))
        })
        .collect()
}

/// Adds to `order` a transitive orientation of the non-edges inside `set`.
fn orient(g: &CollisionGraph, set: &VertexSet, order: &mut DominanceRelation) -> Result<(), LayerError> {
    if set.len() == 1 {
        return Ok(());
    }

    let comps = g.components_within(set);
    if comps.len() > 1 {
        // stacked by smallest member, first on top
        for (i, upper) in comps.iter().enumerate() {
            orient(g, upper, order)?;
            for lower in &comps[i + 1..] {
                for &u in upper {
                    for &v in lower {
                        order.insert(u, v);
                    }
                }
            }
        }
        return Ok(());
    }

    let co_comps = g.co_components_within(set);
    if co_comps.len() > 1 {
        for part in &co_comps {
            orient(g, part, order)?;
        }
        return Ok(());
    }

    let (sub, back) = g.induced(set);
    let report = find_modules(&sub);
    let reps: VertexSet = (0..sub.n())
        .filter(|&v| report.representative[v] == v)
        .collect();
    let (quotient, quotient_back) = sub.induced(&reps);
    let quotient_layers = match find_lower_bound(&quotient) {
        Ok(lower) => layers_from_lower_bound(&quotient, &lower)?,
        Err(LayerError::EmptyExterior) => layers_via_orientation(&quotient)?,
        Err(e) => return Err(e),
    };
    let quotient_order = quotient_layers.dominance(&quotient);

    // members[q]: original ids of the module quotient vertex q stands for
    let mut members = vec![Vec::new(); quotient.n()];
    for v in 0..sub.n() {
        let rep = report.representative[v];
        let q = quotient_back
            .iter()
            .position(|&x| x == rep)
            .expect("every representative is a quotient vertex");
        members[q].push(back[v]);
    }
    for (p, q) in quotient_order.pairs() {
        for &u in &members[p] {
            for &v in &members[q] {
                order.insert(u, v);
            }
        }
    }
    for m in members.iter().filter(|m| m.len() > 1) {
        orient(g, &m.iter().copied().collect(), order)?;
    }
    Ok(())
}
