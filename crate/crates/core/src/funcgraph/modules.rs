//! Modules (vertex sets every outsider sees all-or-none of) by direct search.
//!
//! The smallest module containing a pair is found by absorbing splitters until
//! none remain. In a graph that is connected with a connected complement, two
//! vertices share a maximal proper module exactly when that closure is not
//! the whole vertex set, so grouping by it gives the maximal modules.
//! Quadratic in the number of pairs, which is fine at the sizes this crate
//! handles.

use std::collections::BTreeMap;

use crate::graph::{CollisionGraph, VertexSet};
use crate::model::ObjectId;

/// Every vertex outside `set` is adjacent to all of it or to none of it.
pub fn is_module(g: &CollisionGraph, set: &VertexSet) -> bool {
    (0..g.n())
        .filter(|v| !set.contains(v))
        .all(|w| {
            let hits = set.iter().filter(|&&s| g.has_edge(w, s)).count();
            hits == 0 || hits == set.len()
        })
}

/// Smallest module containing `seed`.
fn module_closure(g: &CollisionGraph, seed: VertexSet) -> VertexSet {
    let mut set = seed;
    loop {
        let splitters: Vec<ObjectId> = (0..g.n())
            .filter(|w| !set.contains(w))
            .filter(|&w| {
                let hits = set.iter().filter(|&&s| g.has_edge(w, s)).count();
                hits != 0 && hits != set.len()
            })
            .collect();
        if splitters.is_empty() {
            return set;
        }
        set.extend(splitters);
    }
}

/// Maximal proper modules of size at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleReport {
    pub modules: Vec<VertexSet>,
    /// `representative[v]` is the lowest id of the module `v` is contracted
    /// into, or `v` itself. Overlapping modules (possible only when the graph
    /// or its complement is disconnected) are claimed greedily in listing
    /// order.
    pub representative: Vec<ObjectId>,
}

impl ModuleReport {
    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }
}

pub fn find_modules(g: &CollisionGraph) -> ModuleReport {
    let n = g.n();
    let all = g.vertices();
    let comps = g.components();
    let parts = if comps.len() > 1 {
        comps
    } else {
        g.co_components_within(&all)
    };
    let mut modules: Vec<VertexSet> = if parts.len() > 1 {
        // every proper module avoids some part, and the rest of V is a module
        parts
            .iter()
            .map(|p| all.difference(p).copied().collect::<VertexSet>())
            .filter(|m| m.len() > 1)
            .collect()
    } else {
        // proper modules here never overlap without nesting in a larger
        // proper one, so merging overlapping pair closures gives the maximal
        // ones
        let mut class: Vec<usize> = (0..n).collect();
        fn root(class: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while class[r] != r {
                r = class[r];
            }
            class[v] = r;
            r
        }
        for u in 0..n {
            for v in u + 1..n {
                if root(&mut class, u) == root(&mut class, v) {
                    continue;
                }
                let m = module_closure(g, [u, v].into());
                if m.len() < n {
                    let r = root(&mut class, u);
                    for x in m {
                        let rx = root(&mut class, x);
                        class[rx] = r;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for v in 0..n {
            groups.entry(root(&mut class, v)).or_default().insert(v);
        }
        groups.into_values().filter(|m| m.len() > 1).collect()
    };
    modules.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()).then(b.len().cmp(&a.len())));

    let mut representative: Vec<ObjectId> = (0..n).collect();
    let mut claimed = vec![false; n];
    for m in &modules {
        if m.iter().any(|&v| claimed[v]) {
            continue;
        }
        let rep = *m.iter().next().expect("modules are nonempty");
        for &v in m {
            claimed[v] = true;
            representative[v] = rep;
        }
    }
    ModuleReport {
        modules,
        representative,
    }
}

/// Result of collapsing modules to representatives until none is left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleContraction {
    pub quotient: CollisionGraph,
    /// Original id of each quotient vertex.
    pub members: Vec<ObjectId>,
    /// Representative (an original id) of every original vertex.
    pub mapping: Vec<ObjectId>,
}

/// Replaces each maximal module by its lowest id and repeats on the quotient
/// until it is prime. A two-vertex remainder is itself a module and
/// collapses to one vertex.
pub fn contract_modules(g: &CollisionGraph) -> ModuleContraction {
    let mut mapping: Vec<ObjectId> = (0..g.n()).collect();
    let mut members: Vec<ObjectId> = (0..g.n()).collect();
    let mut quotient = g.clone();
    loop {
        let report = find_modules(&quotient);
        let keep: VertexSet = if report.is_empty() {
            if quotient.n() == 2 {
                [0].into()
            } else {
                break;
            }
        } else {
            (0..quotient.n())
                .filter(|&v| report.representative[v] == v)
                .collect()
        };
        let rep_of = |q: usize| {
            if report.is_empty() {
                0
            } else {
                report.representative[q]
            }
        };
        for m in mapping.iter_mut() {
            let q = members.iter().position(|&x| x == *m).expect("mapped to a member");
            *m = members[rep_of(q)];
        }
        let (next, back) = quotient.induced(&keep);
        members = back.iter().map(|&q| members[q]).collect();
        quotient = next;
        if quotient.n() <= 1 {
            break;
        }
    }
    ModuleContraction {
        quotient,
        members,
        mapping,
    }
}

/// Vertices adjacent to every other vertex.
pub fn universal_vertices(g: &CollisionGraph) -> VertexSet {
    universal_within(g, &g.vertices())
}

pub(crate) fn universal_within(g: &CollisionGraph, within: &VertexSet) -> VertexSet {
    within
        .iter()
        .copied()
        .filter(|&u| within.iter().all(|&v| v == u || g.has_edge(u, v)))
        .collect()
}
