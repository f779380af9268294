//! Piecewise-linear trajectories and the ground truth derived from them.
//!
//! A [`TrajectorySet`] holds the values of every object at a shared grid of
//! breakpoints in `[0, 1]`; between breakpoints objects move linearly, so
//! every crossing has a closed form. Generated sets are *generic*: values at
//! breakpoints are pairwise distinct, every crossing is transversal, and no
//! two crossings happen at the same time. The oracles below read orderings,
//! dominance and layers straight off the curves and are what the recovery
//! algorithms get checked against.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CollisionGraph, VertexSet};
use crate::model::{
    CollisionEvent, DominanceRelation, LayerDecomposition, ObjectId, OrderedHistory, Ordering,
    OrderingTimeline,
};

/// Resampling budget for degenerate draws.
pub const MAX_RETRIES: usize = 100;

/// Minimum separation between distinct values at a breakpoint and between
/// distinct crossing times.
const GENERIC_GAP: f64 = 1e-9;

/// Minimum separation between objects at the instants the timeline oracle
/// samples.
const SAMPLE_GAP: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulationError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no generic trajectory set found after {attempts} attempts")]
    GenericityUnreachable { attempts: usize },
    #[error("degenerate trajectories: {0}")]
    Degenerate(String),
    #[error("{0:?} is not a module of the collision graph")]
    NotAModule(Vec<ObjectId>),
    #[error("representative {0} is not a member of the module")]
    RepresentativeOutsideModule(ObjectId),
    #[error("epsilon {0} changed the collision graph; retry with a smaller epsilon")]
    EpsilonTooLarge(f64),
}

/// One transversal crossing between two objects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub u: ObjectId,
    pub v: ObjectId,
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TrajectoryWire", into = "TrajectoryWire")]
pub struct TrajectorySet {
    breakpoints: Vec<f64>,
    values: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ObjectWire {
    id: ObjectId,
    values: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TrajectoryWire {
    breakpoints: Vec<f64>,
    objects: Vec<ObjectWire>,
}

impl From<TrajectorySet> for TrajectoryWire {
    fn from(ts: TrajectorySet) -> Self {
        Self {
            breakpoints: ts.breakpoints,
            objects: ts
                .values
                .into_iter()
                .enumerate()
                .map(|(id, values)| ObjectWire { id, values })
                .collect(),
        }
    }
}

impl TryFrom<TrajectoryWire> for TrajectorySet {
    type Error = SimulationError;

    fn try_from(wire: TrajectoryWire) -> Result<Self, Self::Error> {
        let n = wire.objects.len();
        let mut values = vec![None; n];
        for obj in wire.objects {
            if obj.id >= n || values[obj.id].is_some() {
                return Err(SimulationError::InvalidParameters(format!(
                    "object ids must be exactly 0..{n}"
                )));
            }
            values[obj.id] = Some(obj.values);
        }
        TrajectorySet::new(wire.breakpoints, values.into_iter().flatten().collect())
    }
}

impl TrajectorySet {
    /// Validates the grid shape only; genericity is checked separately by
    /// [`TrajectorySet::check_generic`].
    pub fn new(breakpoints: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self, SimulationError> {
        let bad = |msg: &str| Err(SimulationError::InvalidParameters(msg.to_string()));
        if breakpoints.len() < 2 {
            return bad("need at least two breakpoints");
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return bad("breakpoints must start at 0 and end at 1");
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("breakpoints must be strictly increasing");
        }
        if values.is_empty() {
            return bad("need at least one object");
        }
        if values.iter().any(|v| v.len() != breakpoints.len()) {
            return bad("every object needs one value per breakpoint");
        }
        if values.iter().flatten().any(|x| !x.is_finite()) {
            return bad("values must be finite");
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self, id: ObjectId) -> &[f64] {
        &self.values[id]
    }

    /// The curves listed in `keep`, renumbered `0..keep.len()` in that order.
    /// Their collision graph is the subgraph induced on `keep`.
    pub fn subset(&self, keep: &[ObjectId]) -> Result<Self, SimulationError> {
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.n()) {
            return Err(SimulationError::InvalidParameters(format!(
                "object {bad} out of range"
            )));
        }
        Self::new(
            self.breakpoints.clone(),
            keep.iter().map(|&v| self.values[v].clone()).collect(),
        )
    }

    pub fn value_at(&self, id: ObjectId, t: f64) -> f64 {
        let bp = &self.breakpoints;
        let vals = &self.values[id];
        let s = match bp.iter().position(|&b| b > t) {
            None => return vals[bp.len() - 1],
            Some(0) => return vals[0],
            Some(i) => i - 1,
        };
        let frac = (t - bp[s]) / (bp[s + 1] - bp[s]);
        vals[s] + frac * (vals[s + 1] - vals[s])
    }

    fn diff(&self, u: ObjectId, v: ObjectId, k: usize) -> f64 {
        self.values[u][k] - self.values[v][k]
    }

    /// Sign changes of `u - v` inside segments, in time order, with `u < v`.
    /// Touching at a breakpoint is not reported here.
    pub fn crossings(&self) -> Vec<Crossing> {
        let n = self.n();
        let bp = &self.breakpoints;
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                for s in 0..bp.len() - 1 {
                    let d0 = self.diff(u, v, s);
                    let d1 = self.diff(u, v, s + 1);
                    if d0 * d1 < 0.0 {
                        let time = bp[s] + (bp[s + 1] - bp[s]) * d0 / (d0 - d1);
                        out.push(Crossing { u, v, time });
                    }
                }
            }
        }
        out.sort_by(|a, b| a.time.total_cmp(&b.time));
        out
    }

    /// Pairs that are ever equal: a sign change inside a segment or a tie at
    /// a breakpoint. Needs no genericity.
    pub fn collision_graph(&self) -> CollisionGraph {
        let n = self.n();
        let m = self.breakpoints.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let meets = (0..m).any(|k| self.diff(u, v, k) == 0.0)
                    || (0..m - 1).any(|k| self.diff(u, v, k) * self.diff(u, v, k + 1) < 0.0);
                if meets {
                    edges.push((u, v));
                }
            }
        }
        CollisionGraph::new(n, edges).expect("ids are in range")
    }

    /// Instants strictly between consecutive crossings (and after the last
    /// one) at which the timeline oracle reads positions.
    fn sample_times(&self, crossings: &[Crossing]) -> Vec<f64> {
        let mut times = vec![0.0];
        for (k, c) in crossings.iter().enumerate() {
            let next = crossings.get(k + 1).map_or(1.0, |c| c.time);
            times.push(0.5 * (c.time + next));
        }
        times
    }

    fn ordering_at(&self, t: f64) -> (Vec<ObjectId>, f64) {
        let vals: Vec<f64> = (0..self.n()).map(|id| self.value_at(id, t)).collect();
        let mut ids: Vec<ObjectId> = (0..self.n()).collect();
        ids.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let gap = ids
            .windows(2)
            .map(|w| vals[w[1]] - vals[w[0]])
            .fold(f64::INFINITY, f64::min);
        (ids, gap)
    }

    /// Checks the genericity conditions the history extraction relies on.
    pub fn check_generic(&self) -> Result<(), SimulationError> {
        let n = self.n();
        for k in 0..self.breakpoints.len() {
            let mut col: Vec<f64> = (0..n).map(|id| self.values[id][k]).collect();
            col.sort_by(f64::total_cmp);
            if col.windows(2).any(|w| w[1] - w[0] < GENERIC_GAP) {
                return Err(SimulationError::Degenerate(format!(
                    "near tie at breakpoint {k}"
                )));
            }
        }
        let crossings = self.crossings();
        if let Some(w) = crossings.windows(2).find(|w| w[1].time - w[0].time < GENERIC_GAP) {
            return Err(SimulationError::Degenerate(format!(
                "crossings ({},{}) and ({},{}) nearly simultaneous at t = {}",
                w[0].u, w[0].v, w[1].u, w[1].v, w[0].time
            )));
        }
        for t in self.sample_times(&crossings) {
            if n > 1 && self.ordering_at(t).1 < SAMPLE_GAP {
                return Err(SimulationError::Degenerate(format!(
                    "objects too close at sample time {t}"
                )));
            }
        }
        Ok(())
    }
}

fn random_breakpoints(rng: &mut ChaCha8Rng, segments: usize) -> Vec<f64> {
    let mut inner: Vec<f64> = (0..segments - 1).map(|_| rng.gen_range(0.0..1.0)).collect();
    inner.sort_by(f64::total_cmp);
    let mut bp = Vec::with_capacity(segments + 1);
    bp.push(0.0);
    bp.extend(inner);
    bp.push(1.0);
    bp
}

fn check_counts(n: usize, segments: usize) -> Result<(), SimulationError> {
    if n == 0 || segments == 0 {
        return Err(SimulationError::InvalidParameters(
            "need n >= 1 and segments >= 1".into(),
        ));
    }
    Ok(())
}

/// Draws generic trajectories with values uniform in `[0, 1)`. The result is
/// a pure function of the arguments.
pub fn generate_trajectories(
    n: usize,
    segments: usize,
    seed: u64,
) -> Result<TrajectorySet, SimulationError> {
    generate_banded(&[n], segments, seed)
}

/// Draws trajectories in disjoint horizontal bands, one band per group:
/// group `g` gets `sizes[g]` objects living in `[2g, 2g + 1)`. Objects of
/// different groups never meet, so each group is a union of components.
pub fn generate_banded(
    sizes: &[usize],
    segments: usize,
    seed: u64,
) -> Result<TrajectorySet, SimulationError> {
    let n: usize = sizes.iter().sum();
    check_counts(n, segments)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let bp = random_breakpoints(&mut rng, segments);
        let mut values = Vec::with_capacity(n);
        for (g, &size) in sizes.iter().enumerate() {
            let base = 2.0 * g as f64;
            for _ in 0..size {
                values.push(
                    (0..=segments)
                        .map(|_| base + rng.gen_range(0.0..1.0))
                        .collect(),
                );
            }
        }
        let ts = TrajectorySet::new(bp, values)?;
        if ts.check_generic().is_ok() {
            return Ok(ts);
        }
    }
    Err(SimulationError::GenericityUnreachable {
        attempts: MAX_RETRIES,
    })
}

/// Adds a new object that shadows `base` within `spread`, so that `base` and
/// the newcomer are twins of the collision graph. The newcomer gets id `n`.
pub fn plant_twin(
    ts: &TrajectorySet,
    base: ObjectId,
    seed: u64,
) -> Result<TrajectorySet, SimulationError> {
    if base >= ts.n() {
        return Err(SimulationError::InvalidParameters(format!(
            "base object {base} out of range"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spread = 1e-2;
    for _ in 0..MAX_RETRIES {
        let shadow: Vec<f64> = ts.values[base]
            .iter()
            .map(|&x| x + spread * rng.gen_range(-1.0..1.0))
            .collect();
        let mut values = ts.values.clone();
        values.push(shadow);
        let planted = TrajectorySet::new(ts.breakpoints.clone(), values)?;
        let module: VertexSet = [base, ts.n()].into();
        if planted.check_generic().is_ok() && is_module(&planted.collision_graph(), &module) {
            return Ok(planted);
        }
        spread *= 0.5;
    }
    Err(SimulationError::GenericityUnreachable {
        attempts: MAX_RETRIES,
    })
}

fn is_module(g: &CollisionGraph, set: &VertexSet) -> bool {
    (0..g.n()).filter(|v| !set.contains(v)).all(|w| {
        let hits = set.iter().filter(|&&s| g.has_edge(w, s)).count();
        hits == 0 || hits == set.len()
    })
}

/// The time-ordered collisions of a generic trajectory set.
pub fn extract_history(ts: &TrajectorySet) -> Result<OrderedHistory, SimulationError> {
    ts.check_generic()?;
    let events = ts
        .crossings()
        .into_iter()
        .map(|c| CollisionEvent::new(c.u, c.v, c.time))
        .collect();
    OrderedHistory::new(ts.n(), events).map_err(|e| SimulationError::Degenerate(e.to_string()))
}

/// Orderings read off the curves: at `t = 0` and between consecutive
/// crossings.
pub fn ordering_timeline_oracle(ts: &TrajectorySet) -> Result<OrderingTimeline, SimulationError> {
    ts.check_generic()?;
    let crossings = ts.crossings();
    let orderings = ts
        .sample_times(&crossings)
        .into_iter()
        .map(|t| Ordering::from_vec_unchecked(ts.ordering_at(t).0))
        .collect();
    Ok(OrderingTimeline::new(orderings))
}

/// `u > v` for every pair that never meets and has `u` above at `t = 0`.
pub fn dominance_oracle(ts: &TrajectorySet) -> DominanceRelation {
    let g = ts.collision_graph();
    let mut d = DominanceRelation::empty(ts.n());
    for u in 0..ts.n() {
        for v in 0..ts.n() {
            if u != v && !g.has_edge(u, v) && ts.values[u][0] > ts.values[v][0] {
                d.insert(u, v);
            }
        }
    }
    d
}

/// Peels `Max` under [`dominance_oracle`] until nothing is left.
pub fn layers_oracle(ts: &TrajectorySet) -> LayerDecomposition {
    dominance_oracle(ts).peel_layers(&(0..ts.n()).collect())
}

/// Replaces each member `i` of `module` by `epsilon * v_i(t) + v_rep(t)`,
/// squeezing the module into a thin band around the representative. Fails if
/// the collision graph changes.
pub fn shrink_module(
    ts: &TrajectorySet,
    module: &VertexSet,
    representative: ObjectId,
    epsilon: f64,
) -> Result<TrajectorySet, SimulationError> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(SimulationError::InvalidParameters(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if let Some(&bad) = module.iter().find(|&&v| v >= ts.n()) {
        return Err(SimulationError::InvalidParameters(format!(
            "module member {bad} out of range"
        )));
    }
    if !module.contains(&representative) {
        return Err(SimulationError::RepresentativeOutsideModule(representative));
    }
    let before = ts.collision_graph();
    if !is_module(&before, module) {
        return Err(SimulationError::NotAModule(module.iter().copied().collect()));
    }
    let rep = ts.values[representative].clone();
    let mut values = ts.values.clone();
    for &i in module {
        values[i] = ts.values[i]
            .iter()
            .zip(&rep)
            .map(|(&x, &r)| epsilon * x + r)
            .collect();
    }
    let shrunk = TrajectorySet::new(ts.breakpoints.clone(), values)?;
    if shrunk.collision_graph() != before {
        return Err(SimulationError::EpsilonTooLarge(epsilon));
    }
    Ok(shrunk)
}
