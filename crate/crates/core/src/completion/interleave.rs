use serde::{Deserialize, Serialize};

use crate::error::InputError;

use super::CompletionError;

/// Largest `k + l` the exhaustive merge search accepts.
pub const MAX_ORACLE_LEN: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    X,
    Y,
}

/// Sequences `x_0..=x_k` and `y_0..=y_l` with `x_0 = y_0`, and closed index
/// intervals on each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceWire", into = "InstanceWire")]
pub struct InterleavingInstance {
    k: usize,
    l: usize,
    intervals_x: Vec<(usize, usize)>,
    intervals_y: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceWire {
    k: usize,
    l: usize,
    #[serde(default)]
    ix: Vec<(usize, usize)>,
    #[serde(default)]
    iy: Vec<(usize, usize)>,
}

impl TryFrom<InstanceWire> for InterleavingInstance {
    type Error = InputError;

    fn try_from(w: InstanceWire) -> Result<Self, InputError> {
        InterleavingInstance::new(w.k, w.l, w.ix, w.iy)
    }
}

impl From<InterleavingInstance> for InstanceWire {
    fn from(inst: InterleavingInstance) -> Self {
        InstanceWire {
            k: inst.k,
            l: inst.l,
            ix: inst.intervals_x,
            iy: inst.intervals_y,
        }
    }
}

impl InterleavingInstance {
    pub fn new(
        k: usize,
        l: usize,
        intervals_x: Vec<(usize, usize)>,
        intervals_y: Vec<(usize, usize)>,
    ) -> Result<Self, InputError> {
        for (&(start, end), len) in intervals_x
            .iter()
            .map(|iv| (iv, k + 1))
            .chain(intervals_y.iter().map(|iv| (iv, l + 1)))
        {
            if start > end || end >= len {
                return Err(InputError::BadInterval { start, end, len });
            }
        }
        Ok(InterleavingInstance {
            k,
            l,
            intervals_x,
            intervals_y,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn intervals_x(&self) -> &[(usize, usize)] {
        &self.intervals_x
    }

    pub fn intervals_y(&self) -> &[(usize, usize)] {
        &self.intervals_y
    }

    /// The same instance with the roles of X and Y exchanged.
    pub fn swapped(&self) -> Self {
        InterleavingInstance {
            k: self.l,
            l: self.k,
            intervals_x: self.intervals_y.clone(),
            intervals_y: self.intervals_x.clone(),
        }
    }

    fn has_intervals(&self) -> bool {
        !self.intervals_x.is_empty() || !self.intervals_y.is_empty()
    }

    /// Longest interval measured in its own sequence.
    fn own_length_bound(&self) -> usize {
        self.intervals_x
            .iter()
            .chain(&self.intervals_y)
            .map(|&(i, j)| j - i + 1)
            .max()
            .unwrap_or(0)
    }

    fn max_merged_length(&self, positions: &[usize]) -> usize {
        let xs = self
            .intervals_x
            .iter()
            .map(|&iv| merged_length(self, positions, iv, Sequence::X));
        let ys = self
            .intervals_y
            .iter()
            .map(|&iv| merged_length(self, positions, iv, Sequence::Y));
        xs.chain(ys).max().unwrap_or(0)
    }
}

/// `positions[i - 1]` is the index `j` of the Y element that `x_i` follows
/// (`x_i` sits between `y_j` and `y_{j+1}`); `achieved` is the longest
/// interval in that merge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterleavingSolution {
    #[serde(rename = "B")]
    pub achieved: usize,
    pub positions: Vec<usize>,
}

pub type Interleaving = Vec<usize>;

fn position_of(positions: &[usize], i: usize) -> usize {
    if i == 0 {
        0
    } else {
        positions[i - 1]
    }
}

/// Number of merged elements from one endpoint of `interval` to the other.
pub fn merged_length(
    instance: &InterleavingInstance,
    positions: &[usize],
    interval: (usize, usize),
    which: Sequence,
) -> usize {
    let (i, j) = interval;
    match which {
        Sequence::X => j - i + 1 + position_of(positions, j) - position_of(positions, i),
        Sequence::Y => {
            let inside = positions[..instance.k]
                .iter()
                .filter(|&&p| i <= p && p < j)
                .count();
            j - i + 1 + inside
        }
    }
}

/// The lowest merge (componentwise) in which every interval has merged
/// length at most `b`, if there is one.
///
/// Positions start at zero and are only ever raised, each time by exactly
/// what some constraint forces: a forward pass keeps positions
/// non-decreasing and pushes X elements past the end of any Y interval that
/// would otherwise hold too many of them, and a backward pass lifts the
/// start of every X interval that has been stretched too far. Once nothing
/// moves, the positions are the least feasible merge; a position forced past
/// `l` (or a forced move of `x_0`) means there is none.
pub fn feasible(instance: &InterleavingInstance, b: usize) -> Option<Interleaving> {
    let (k, l) = (instance.k, instance.l);
    if instance.own_length_bound() > b {
        return None;
    }
    let mut p = vec![0usize; k + 1];
    let max_rounds = k * l + 2;
    let mut settled = false;
    for _ in 0..max_rounds {
        let mut changed = false;
        for i in 1..=k {
            if p[i] < p[i - 1] {
                p[i] = p[i - 1];
                changed = true;
            }
            for &(a, c) in &instance.intervals_y {
                // at most `room` elements of X fit strictly inside y_a..y_c
                let room = b - (c - a + 1);
                if a < c && i > room && p[i - room] >= a && p[i] < c {
                    p[i] = c;
                    changed = true;
                }
            }
            if p[i] > l {
                return None;
            }
        }
        for &(s, j) in instance.intervals_x.iter().rev() {
            let slack = b - (j - s + 1);
            if p[j] > p[s] + slack {
                if s == 0 {
                    return None;
                }
                p[s] = p[j] - slack;
                changed = true;
            }
        }
        if !changed {
            settled = true;
            break;
        }
    }
    if !settled {
        debug_assert!(false, "passes did not settle within k*l + 2 rounds");
        return None;
    }
    let positions = p[1..].to_vec();
    (instance.max_merged_length(&positions) <= b).then_some(positions)
}

/// Smallest achievable longest interval, by binary search over [`feasible`].
pub fn solve_interleaving(instance: &InterleavingInstance) -> InterleavingSolution {
    if !instance.has_intervals() {
        return InterleavingSolution {
            achieved: 0,
            positions: vec![0; instance.k],
        };
    }
    let mut lo = instance.own_length_bound();
    let mut hi = instance.k + instance.l + 1;
    let mut best = feasible(instance, hi).expect("the full merged length is always feasible");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match feasible(instance, mid) {
            Some(w) => {
                hi = mid;
                best = w;
            }
            None => lo = mid + 1,
        }
    }
    InterleavingSolution {
        achieved: hi,
        positions: best,
    }
}

/// Lays the merge out element by element and measures each interval by the
/// distance between its endpoints.
fn measure_merge(instance: &InterleavingInstance, positions: &[usize]) -> usize {
    let mut at_x = vec![0usize; instance.k + 1];
    let mut at_y = vec![0usize; instance.l + 1];
    let mut slot = 0;
    let mut next_x = 1;
    for j in 0..=instance.l {
        if j > 0 {
            slot += 1;
            at_y[j] = slot;
        }
        while next_x <= instance.k && positions[next_x - 1] == j {
            slot += 1;
            at_x[next_x] = slot;
            next_x += 1;
        }
    }
    let span = |at: &[usize], &(i, j): &(usize, usize)| at[j] - at[i] + 1;
    let xs = instance.intervals_x.iter().map(|iv| span(&at_x, iv));
    let ys = instance.intervals_y.iter().map(|iv| span(&at_y, iv));
    xs.chain(ys).max().unwrap_or(0)
}

/// Tries every merge; the first optimum in lexicographic order of positions
/// is the witness.
pub fn brute_force_interleaving(
    instance: &InterleavingInstance,
) -> Result<InterleavingSolution, CompletionError> {
    let size = instance.k + instance.l;
    if size > MAX_ORACLE_LEN {
        return Err(CompletionError::InstanceTooLarge {
            what: "k + l",
            size,
            limit: MAX_ORACLE_LEN,
        });
    }
    let mut best: Option<InterleavingSolution> = None;
    let mut current = Vec::with_capacity(instance.k);
    enumerate(instance, &mut current, &mut best);
    Ok(best.expect("at least one merge exists"))
}

fn enumerate(
    instance: &InterleavingInstance,
    current: &mut Vec<usize>,
    best: &mut Option<InterleavingSolution>,
) {
    if current.len() == instance.k {
        let achieved = measure_merge(instance, current);
        if best.as_ref().map_or(true, |b| achieved < b.achieved) {
            *best = Some(InterleavingSolution {
                achieved,
                positions: current.clone(),
            });
        }
        return;
    }
    let from = current.last().copied().unwrap_or(0);
    for p in from..=instance.l {
        current.push(p);
        enumerate(instance, current, best);
        current.pop();
    }
}
