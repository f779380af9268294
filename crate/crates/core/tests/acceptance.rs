//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use colline::completion::{
    brute_force_interleaving, check_sandwich, feasible, merged_length, solve_interleaving,
    InterleavingInstance, Sequence,
};
use colline::funcgraph::{
    contraction_graph, find_modules, layer_decomposition, layers_via_orientation,
    recognize_function_graph,
};
use colline::ordered::{
    recover_end_position, recover_timeline, recover_timeline_by_swapping, swap_transform,
    RecoveryError,
};
use colline::simulate::{
    extract_history, generate_banded, generate_trajectories, layers_oracle,
    ordering_timeline_oracle, plant_twin, shrink_module, SimulationError, TrajectorySet,
};
use colline::{CollisionGraph, VertexSet};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: usize, detail: String) -> Outcome {
    Outcome {
        passed: failures == 0,
        detail,
    }
}

/// Draws simulations with `n` in `2..=12` and `2..=6` segments until `want`
/// of them have a connected history; returns them with the number skipped.
fn connected_simulations(want: usize, first_seed: u64) -> (Vec<TrajectorySet>, usize) {
    let mut out = Vec::with_capacity(want);
    let mut skipped = 0;
    let mut seed = first_seed;
    while out.len() < want {
        let n = 2 + (seed % 11) as usize;
        let segments = 2 + ((seed / 11) % 5) as usize;
        let ts = generate_trajectories(n, segments, seed).expect("simulation");
        if ts.collision_graph().is_connected() {
            out.push(ts);
        } else {
            skipped += 1;
        }
        seed += 1;
    }
    (out, skipped)
}

fn ordered_round_trip() -> Outcome {
    let (sims, skipped) = connected_simulations(1000, 0);
    let mut failures = 0;
    for ts in &sims {
        let h = extract_history(ts).expect("generic simulation");
        let oracle = ordering_timeline_oracle(ts).expect("generic simulation");
        match recover_timeline(&h) {
            Ok(t) if t.canonical() == oracle.canonical() => {}
            _ => failures += 1,
        }
    }
    outcome(
        failures,
        format!(
            "{} connected histories ({skipped} disconnected draws skipped), {failures} mismatches",
            sims.len()
        ),
    )
}

fn connectivity_iff_uniqueness() -> Outcome {
    let mut failures = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let groups = rng.gen_range(2..=3);
        let sizes: Vec<usize> = (0..groups).map(|_| rng.gen_range(1..=4)).collect();
        let segments = rng.gen_range(2..=6);
        let ts = generate_banded(&sizes, segments, seed).expect("simulation");
        let h = extract_history(&ts).expect("generic simulation");
        let g = h.underlying_graph();

        let refused = matches!(recover_timeline(&h), Err(RecoveryError::NotConnected { .. }));
        let oracle_end = ordering_timeline_oracle(&ts).expect("generic simulation");
        let oracle_end = oracle_end.last().expect("nonempty timeline");
        let per_component = match recover_end_position(&h) {
            Ok(end) => {
                let comps = g.components();
                end.component_count() == comps.len()
                    && comps.iter().all(|c| {
                        let expected: Vec<usize> = oracle_end.restricted_to(c);
                        let rev: Vec<usize> = expected.iter().rev().copied().collect();
                        let got = end.sequence_of(*c.iter().next().unwrap());
                        got == expected.as_slice() || got == rev.as_slice()
                    })
            }
            Err(_) => false,
        };
        if g.is_connected() || !refused || !per_component {
            failures += 1;
        }
    }
    outcome(failures, format!("200 disconnected histories, {failures} failures"))
}

fn swapping_construction() -> Outcome {
    let (sims, _) = connected_simulations(500, 100_000);
    let mut failures = 0;
    for ts in &sims {
        let h = extract_history(ts).expect("generic simulation");
        let (transformed, _) = swap_transform(&h);
        let path = transformed.underlying_graph().is_path();
        let agree = match (recover_timeline_by_swapping(&h), recover_timeline(&h)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        if !path || !agree {
            failures += 1;
        }
    }
    outcome(failures, format!("500 connected histories, {failures} failures"))
}

/// Simulated prime graphs: a connected draw whose complement is connected
/// too, restricted to one curve per maximal module.
fn prime_instances(want: usize) -> (Vec<TrajectorySet>, usize) {
    let mut out = Vec::with_capacity(want);
    let mut draws = 0;
    let mut seed = 7_000_000u64;
    while out.len() < want {
        draws += 1;
        let n = 4 + (seed % 9) as usize;
        let segments = 2 + ((seed / 9) % 5) as usize;
        seed += 1;
        let ts = generate_trajectories(n, segments, seed).expect("simulation");
        let g = ts.collision_graph();
        if !g.is_connected() || g.co_components_within(&g.vertices()).len() > 1 {
            continue;
        }
        let report = find_modules(&g);
        let keep: Vec<usize> = (0..n).filter(|&v| report.representative[v] == v).collect();
        let sub = ts.subset(&keep).expect("subset of valid ids");
        let sg = sub.collision_graph();
        if sg.n() >= 4 && sg.is_connected() && find_modules(&sg).is_empty() {
            out.push(sub);
        }
    }
    (out, draws)
}

fn layer_checks(instances: &[TrajectorySet]) -> (Outcome, Outcome) {
    let mut failures = 0;
    let mut interval_failures = 0;
    for ts in instances {
        let g = ts.collision_graph();
        let oracle = layers_oracle(ts).canonical(&g);
        let ok = match (layer_decomposition(&g), layers_via_orientation(&g)) {
            (Ok(ds), Ok(via)) if ds.len() == 1 => {
                let d = &ds[0];
                d.layers == oracle.layers
                    && via.layers == oracle.layers
                    && d.partitions(&g.vertices())
                    && d.layers_are_residual_maximal_cliques(&g)
                    && d.satisfies_spanning_edge_property(&g)
                    && d.dominance(&g).is_strict_partial_order()
            }
            _ => false,
        };
        if !ok {
            failures += 1;
        }
        let intervals_ok = layer_decomposition(&g)
            .ok()
            .map(|ds| {
                ds.iter().all(|d| match contraction_graph(&g, d) {
                    Ok(c) => {
                        let k = d.len();
                        (0..k).all(|i| {
                            (i + 1..k).all(|j| {
                                let edge = c.contraction_edges.contains(&(i, j));
                                edge == (j <= c.right_reach[i])
                            })
                        })
                    }
                    Err(_) => false,
                })
            })
            .unwrap_or(false);
        if !intervals_ok {
            interval_failures += 1;
        }
    }
    let sizes: BTreeSet<usize> = instances.iter().map(|t| t.n()).collect();
    (
        outcome(
            failures,
            format!(
                "{} prime graphs (n in {:?}..={:?}), {failures} mismatches",
                instances.len(),
                sizes.first().unwrap(),
                sizes.last().unwrap()
            ),
        ),
        outcome(
            interval_failures,
            format!("{} decompositions, {interval_failures} violations", instances.len()),
        ),
    )
}

/// Some vertex order along which the non-edges, oriented forward, are
/// transitive.
fn orientable_by_some_order(g: &CollisionGraph) -> bool {
    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let transitive = (0..n).all(|a| {
            (a + 1..n).all(|b| {
                (b + 1..n).all(|c| {
                    let (x, y, z) = (order[a], order[b], order[c]);
                    g.has_edge(x, y) || g.has_edge(y, z) || !g.has_edge(x, z)
                })
            })
        });
        if transitive {
            return true;
        }
        if !next_permutation(&mut order) {
            return false;
        }
    }
}

fn edge_mask(g: &CollisionGraph, relabel: &[usize]) -> u32 {
    let n = g.n();
    let bit = |u: usize, v: usize| {
        let (u, v) = (u.min(v), u.max(v));
        u * n + v
    };
    g.edges()
        .iter()
        .fold(0, |m, &(u, v)| m | 1 << bit(relabel[u], relabel[v]))
}

fn canonical_mask(g: &CollisionGraph) -> u32 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(g.n()).iter().map(|p| edge_mask(g, p)).min().unwrap()
}

/// One graph per isomorphism class, built by adding a vertex with every
/// possible neighbourhood to each class on one vertex fewer.
fn non_isomorphic_graphs(max_n: usize) -> Vec<Vec<CollisionGraph>> {
    let mut by_n = vec![vec![CollisionGraph::empty(1)]];
    for n in 2..=max_n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for h in &by_n[n - 2] {
            for mask in 0u32..1 << (n - 1) {
                let extra = (0..n - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, n - 1));
                let g = CollisionGraph::new(n, h.edges().iter().copied().chain(extra)).unwrap();
                if seen.insert(canonical_mask(&g)) {
                    next.push(g);
                }
            }
        }
        by_n.push(next);
    }
    by_n
}

fn recognition() -> Outcome {
    let classes = non_isomorphic_graphs(6);
    let counts: Vec<usize> = classes.iter().map(Vec::len).collect();
    let mut failures = 0;
    if counts != [1, 2, 4, 11, 34, 156] {
        failures += 1;
    }
    for g in classes.iter().flatten() {
        let cert = recognize_function_graph(g);
        if cert.is_some() != orientable_by_some_order(g) || cert.is_some_and(|c| !c.verify(g)) {
            failures += 1;
        }
    }
    let mut rejected = 0;
    for seed in 0..500u64 {
        let ts = generate_trajectories(2 + (seed % 11) as usize, 2 + (seed % 5) as usize, seed)
            .expect("simulation");
        let g = ts.collision_graph();
        if !recognize_function_graph(&g).is_some_and(|c| c.verify(&g)) {
            rejected += 1;
        }
    }
    failures += rejected;
    outcome(
        failures,
        format!(
            "{} isomorphism classes (n <= 6, counts {counts:?}) plus 500 simulated graphs, {failures} disagreements",
            counts.iter().sum::<usize>()
        ),
    )
}

fn module_shrinking() -> Outcome {
    let mut failures = 0;
    let mut halvings = 0;
    for seed in 0..200u64 {
        let n = 3 + (seed % 8) as usize;
        let segments = 2 + ((seed / 8) % 5) as usize;
        let ts = generate_trajectories(n, segments, seed).expect("simulation");
        let base = (seed as usize) % n;
        let planted = plant_twin(&ts, base, seed).expect("planting");
        let g = planted.collision_graph();
        let module: VertexSet = [base, n].into();
        let mut epsilon = 1e-3;
        let mut result = None;
        for _ in 0..40 {
            match shrink_module(&planted, &module, base, epsilon) {
                Err(SimulationError::EpsilonTooLarge(_)) => {
                    epsilon /= 2.0;
                    halvings += 1;
                }
                other => {
                    result = Some(other);
                    break;
                }
            }
        }
        match result {
            Some(Ok(shrunk)) if shrunk.collision_graph() == g => {}
            _ => failures += 1,
        }
    }
    outcome(
        failures,
        format!("200 planted twin pairs ({halvings} epsilon halvings), {failures} failures"),
    )
}

fn random_instance(rng: &mut ChaCha8Rng) -> InterleavingInstance {
    let total = rng.gen_range(0..=12);
    let k = rng.gen_range(0..=total);
    let l = total - k;
    let mut intervals = |len: usize| -> Vec<(usize, usize)> {
        let count = rng.gen_range(0..=4);
        (0..count)
            .map(|_| {
                let a = rng.gen_range(0..=len);
                let b = rng.gen_range(0..=len);
                (a.min(b), a.max(b))
            })
            .collect()
    };
    let ix = intervals(k);
    let iy = intervals(l);
    InterleavingInstance::new(k, l, ix, iy).expect("valid intervals")
}

fn interleaving() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut disagreements = 0;
    let mut non_monotone = 0;
    let mut bad_witness = 0;
    for _ in 0..10_000 {
        let inst = random_instance(&mut rng);
        let fast = solve_interleaving(&inst);
        let slow = brute_force_interleaving(&inst).expect("within oracle range");
        if fast.achieved != slow.achieved {
            disagreements += 1;
        }
        let lengths = inst
            .intervals_x()
            .iter()
            .map(|&iv| merged_length(&inst, &fast.positions, iv, Sequence::X))
            .chain(
                inst.intervals_y()
                    .iter()
                    .map(|&iv| merged_length(&inst, &fast.positions, iv, Sequence::Y)),
            )
            .max()
            .unwrap_or(0);
        let sorted = fast.positions.windows(2).all(|w| w[0] <= w[1]);
        let in_range = fast.positions.iter().all(|&p| p <= inst.l());
        if !sorted || !in_range || fast.positions.len() != inst.k() || lengths > fast.achieved {
            bad_witness += 1;
        }
        let flags: Vec<bool> = (1..=inst.k() + inst.l() + 2)
            .map(|b| feasible(&inst, b).is_some())
            .collect();
        if flags.windows(2).any(|w| w[0] && !w[1]) {
            non_monotone += 1;
        }
    }
    outcome(
        disagreements + non_monotone + bad_witness,
        format!(
            "10000 instances, {disagreements} disagreements, {non_monotone} non-monotone, {bad_witness} bad witnesses"
        ),
    )
}

fn sandwich() -> Outcome {
    let mut checked = 0;
    let mut violations = 0;
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = CollisionGraph::new(n, edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            checked += 1;
            if !check_sandwich(&g).expect("within brute-force range") {
                violations += 1;
            }
        }
    }
    outcome(
        violations,
        format!("{checked} connected labelled graphs (n <= 5), {violations} violations"),
    )
}

fn main() {
    let mut all_passed = true;
    let mut report = |id: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |l| elapsed < l);
        let passed = out.passed && in_time;
        all_passed &= passed;
        let limit_text = limit.map_or(String::new(), |l| format!(" (limit {} s)", l.as_secs()));
        println!(
            "[{}] {id}. {name}: {}; {:.2} s{limit_text}",
            if passed { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    };

    report(1, "ordered recovery round-trip", Some(Duration::from_secs(10)), &mut ordered_round_trip);
    report(2, "disconnected histories", None, &mut connectivity_iff_uniqueness);
    report(3, "swapping construction", None, &mut swapping_construction);

    let start = Instant::now();
    let (instances, draws) = prime_instances(500);
    let (layers, intervals) = layer_checks(&instances);
    let elapsed = start.elapsed();
    report(4, "layer decomposition", Some(Duration::from_secs(30)), &mut || Outcome {
        passed: layers.passed && elapsed < Duration::from_secs(30),
        detail: format!("{} from {draws} draws, {:.2} s end to end", layers.detail, elapsed.as_secs_f64()),
    });
    report(5, "interval contraction", None, &mut || Outcome {
        passed: intervals.passed,
        detail: intervals.detail.clone(),
    });

    report(6, "recognition", None, &mut recognition);
    report(7, "module shrinking", None, &mut module_shrinking);
    report(8, "interleaving optimality", Some(Duration::from_secs(60)), &mut interleaving);
    report(9, "bandwidth sandwich", Some(Duration::from_secs(300)), &mut sandwich);

    if !all_passed {
        std::process::exit(1);
    }
}
