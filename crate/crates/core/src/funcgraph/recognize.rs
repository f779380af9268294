use crate::graph::CollisionGraph;
use crate::model::{DominanceRelation, ObjectId};

/// A transitive orientation of the complement, as arcs `(u, v)` read
/// "u above v".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationCertificate {
    n: usize,
    arcs: Vec<(ObjectId, ObjectId)>,
}

impl OrientationCertificate {
    pub fn arcs(&self) -> &[(ObjectId, ObjectId)] {
        &self.arcs
    }

    pub fn dominance(&self) -> DominanceRelation {
        DominanceRelation::from_pairs(self.n, self.arcs.iter().copied())
            .expect("arcs are within range")
    }

    /// Transitive, antisymmetric, and orienting exactly the non-edges of `g`.
    pub fn verify(&self, g: &CollisionGraph) -> bool {
        let d = self.dominance();
        self.arcs.len() == g.n() * g.n().saturating_sub(1) / 2 - g.edge_count()
            && d.is_strict_partial_order()
            && d.is_complement_consistent(g)
            && d.covers_complement(g)
    }
}

/// Orients the complement of `g` transitively if possible.
///
/// Works through implication classes: orienting `a -> b` forces `a -> c`
/// whenever `b` and `c` are joined in `g` (and `ac` is still unoriented), and
/// `c -> b` whenever `a` and `c` are. Each class is oriented as a block and
/// removed before the next is explored; a class that forces some pair both
/// ways proves no orientation exists. The result is re-checked before it is
/// returned.
pub fn recognize_function_graph(g: &CollisionGraph) -> Option<OrientationCertificate> {
    let n = g.n();
    // live[a*n+b]: ab is a complement edge not yet claimed by a class
    let mut live = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            live[a * n + b] = a != b && !g.has_edge(a, b);
        }
    }
    let mut arcs = Vec::new();
    let mut in_class = vec![false; n * n];
    for a0 in 0..n {
        for b0 in a0 + 1..n {
            if !live[a0 * n + b0] {
                continue;
            }
            let mut class = vec![(a0, b0)];
            in_class[a0 * n + b0] = true;
            let mut head = 0;
            while head < class.len() {
                let (a, b) = class[head];
                head += 1;
                for c in 0..n {
                    if c == a || c == b {
                        continue;
                    }
                    let forced = [
                        (live[a * n + c] && !live[b * n + c], (a, c)),
                        (live[c * n + b] && !live[a * n + c], (c, b)),
                    ];
                    for (applies, (x, y)) in forced {
                        if applies && !in_class[x * n + y] {
                            if in_class[y * n + x] {
                                return None;
                            }
                            in_class[x * n + y] = true;
                            class.push((x, y));
                        }
                    }
                }
            }
            for &(x, y) in &class {
                live[x * n + y] = false;
                live[y * n + x] = false;
                in_class[x * n + y] = false;
            }
            arcs.extend(class);
        }
    }
    arcs.sort_unstable();
    let cert = OrientationCertificate { n, arcs };
    cert.verify(g).then_some(cert)
}

pub fn is_function_graph(g: &CollisionGraph) -> bool {
    recognize_function_graph(g).is_some()
}
