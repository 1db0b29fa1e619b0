//! Shared test support: independent brute-force oracles for the source
//! problems and the decomposition optimum, plus seeded random instance
//! builders. The oracles deliberately reimplement everything from first
//! principles (full enumeration) rather than reusing library internals.

#![allow(dead_code)]

use colflow::core::{ArcId, ColouredNetwork, Flow, Instance, VertexId};
use colflow::exact::CostMode;
use colflow::generators::LinkageBase;
use rand_chacha::ChaCha8Rng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::collections::{BTreeSet, HashMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn instance(
    vertex_count: usize,
    arcs: Vec<(VertexId, VertexId, u64, u32)>,
    values: Vec<u64>,
    source: VertexId,
    sink: VertexId,
) -> Instance {
    let network = ColouredNetwork::new(vertex_count, arcs).expect("test network is well formed");
    Instance::new(network, Flow::new(source, sink, values), None).expect("test flow is valid")
}

/// Every simple source-sink path through arcs with positive residual
/// value, as arc id lists (parallel arcs give distinct paths).
fn all_simple_paths(
    network: &ColouredNetwork,
    values: &[u64],
    source: VertexId,
    sink: VertexId,
) -> Vec<Vec<ArcId>> {
    fn dfs(
        network: &ColouredNetwork,
        values: &[u64],
        at: VertexId,
        sink: VertexId,
        on_path: &mut Vec<bool>,
        current: &mut Vec<ArcId>,
        out: &mut Vec<Vec<ArcId>>,
    ) {
        for arc in network.arcs() {
            if arc.tail != at || values[arc.id] == 0 || on_path[arc.head] {
                continue;
            }
            current.push(arc.id);
            if arc.head == sink {
                out.push(current.clone());
            } else {
                on_path[arc.head] = true;
                dfs(network, values, arc.head, sink, on_path, current, out);
                on_path[arc.head] = false;
            }
            current.pop();
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; network.vertex_count()];
    on_path[source] = true;
    dfs(
        network,
        values,
        source,
        sink,
        &mut on_path,
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn path_weight(network: &ColouredNetwork, arcs: &[ArcId], mode: CostMode) -> u64 {
    match mode {
        CostMode::PathCount => 1,
        CostMode::ColourCost => arcs
            .iter()
            .map(|&id| network.arc(id).colour)
            .collect::<BTreeSet<_>>()
            .len() as u64,
    }
}

/// Exhaustive minimum decomposition cost: every simple path at every
/// value from 1 up to min(bottleneck, remaining). Leftover flow once the
/// source-sink value is exhausted is a circulation and costs nothing.
/// Only usable on tiny instances.
pub fn brute_force_min_cost(network: &ColouredNetwork, flow: &Flow, mode: CostMode) -> u64 {
    fn rec(
        network: &ColouredNetwork,
        values: &mut Vec<u64>,
        source: VertexId,
        sink: VertexId,
        remaining: u64,
        mode: CostMode,
        memo: &mut HashMap<Vec<u64>, u64>,
    ) -> u64 {
        if remaining == 0 {
            return 0;
        }
        if let Some(&cost) = memo.get(values) {
            return cost;
        }
        let mut best = u64::MAX;
        for path in all_simple_paths(network, values, source, sink) {
            let bottleneck = path.iter().map(|&id| values[id]).min().unwrap();
            let weight = path_weight(network, &path, mode);
            for value in 1..=bottleneck.min(remaining) {
                for &id in &path {
                    values[id] -= value;
                }
                let tail = rec(network, values, source, sink, remaining - value, mode, memo);
                for &id in &path {
                    values[id] += value;
                }
                if tail != u64::MAX {
                    best = best.min(weight + tail);
                }
            }
        }
        memo.insert(values.clone(), best);
        best
    }
    let mut values = flow.values.clone();
    let remaining = colflow::core::flow_value(network, flow);
    let mut memo = HashMap::new();
    rec(
        network,
        &mut values,
        flow.source,
        flow.sink,
        remaining,
        mode,
        &mut memo,
    )
}

/// 3-Partition ground truth for r = 2: some split into two triples each
/// summing to the target.
pub fn three_partition_brute_r2(values: &[u64], target: u64) -> bool {
    assert_eq!(values.len(), 6);
    for j in 1..5 {
        for k in (j + 1)..6 {
            let triple = values[0] + values[j] + values[k];
            if triple == target && values.iter().sum::<u64>() - triple == target {
                return true;
            }
        }
    }
    false
}

fn simple_vertex_paths(
    arcs: &[(VertexId, VertexId)],
    vertex_count: usize,
    from: VertexId,
    to: VertexId,
    banned: &[bool],
) -> Vec<Vec<usize>> {
    fn dfs(
        arcs: &[(VertexId, VertexId)],
        banned: &[bool],
        at: VertexId,
        to: VertexId,
        on_path: &mut Vec<bool>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for (id, &(tail, head)) in arcs.iter().enumerate() {
            if tail != at || banned[id] || on_path[head] {
                continue;
            }
            current.push(id);
            if head == to {
                out.push(current.clone());
            } else {
                on_path[head] = true;
                dfs(arcs, banned, head, to, on_path, current, out);
                on_path[head] = false;
            }
            current.pop();
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; vertex_count];
    on_path[from] = true;
    dfs(arcs, banned, from, to, &mut on_path, &mut Vec::new(), &mut out);
    out
}

/// Weak-2-linkage ground truth: arc-disjoint u1→v1 and u2→v2 paths exist.
/// Any arc-disjoint pair of walks shrinks to a pair of simple paths, so
/// enumerating simple paths is complete.
pub fn weak_two_linkage_brute(base: &LinkageBase) -> bool {
    let no_ban = vec![false; base.arcs.len()];
    for first in simple_vertex_paths(&base.arcs, base.vertex_count, base.u1, base.v1, &no_ban) {
        let mut banned = no_ban.clone();
        for id in first {
            banned[id] = true;
        }
        if !simple_vertex_paths(&base.arcs, base.vertex_count, base.u2, base.v2, &banned)
            .is_empty()
        {
            return true;
        }
    }
    false
}

/// 1-in-3 satisfiability by sweeping all 2^n assignments.
pub fn one_in_three_brute(clauses: &[[i32; 3]], n: usize) -> bool {
    (0..1u32 << n).any(|assignment| {
        clauses.iter().all(|clause| {
            clause
                .iter()
                .filter(|&&lit| {
                    let var = lit.unsigned_abs() as usize;
                    let value = assignment >> (var - 1) & 1 == 1;
                    if lit > 0 {
                        value
                    } else {
                        !value
                    }
                })
                .count()
                == 1
        })
    })
}

/// Exhaustive minimum s-t cut capacity over all vertex bipartitions;
/// only for networks with few vertices.
pub fn min_cut_brute(network: &ColouredNetwork, source: VertexId, sink: VertexId) -> u64 {
    let n = network.vertex_count();
    assert!(n <= 16, "exhaustive cut enumeration needs a small network");
    let mut best = u64::MAX;
    for mask in 0u32..1 << n {
        if mask >> source & 1 == 0 || mask >> sink & 1 == 1 {
            continue;
        }
        let capacity = network
            .arcs()
            .iter()
            .filter(|a| mask >> a.tail & 1 == 1 && mask >> a.head & 1 == 0)
            .map(|a| a.capacity)
            .sum();
        best = best.min(capacity);
    }
    best
}

/// Incremental superposition builder: paths and cycles stamped onto a
/// growing arc list, optionally reusing an existing arc for a step.
pub struct Superposition {
    pub vertex_count: usize,
    pub arcs: Vec<(VertexId, VertexId, u64, u32)>,
    pub values: Vec<u64>,
}

impl Superposition {
    pub fn new(vertex_count: usize) -> Self {
        Superposition {
            vertex_count,
            arcs: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Adds `value` along the vertex walk, reusing an existing arc per
    /// step with probability `reuse` (fresh arcs otherwise) and colouring
    /// fresh arcs via `colour`.
    pub fn stamp(
        &mut self,
        rng: &mut ChaCha8Rng,
        walk: &[VertexId],
        value: u64,
        reuse: f64,
        mut colour: impl FnMut(&mut ChaCha8Rng) -> u32,
    ) {
        for step in walk.windows(2) {
            let (tail, head) = (step[0], step[1]);
            let existing: Vec<usize> = self
                .arcs
                .iter()
                .enumerate()
                .filter(|(_, a)| (a.0, a.1) == (tail, head))
                .map(|(i, _)| i)
                .collect();
            if !existing.is_empty() && rng.gen_bool(reuse) {
                let id = *existing.choose(rng).unwrap();
                self.arcs[id].2 += value;
                self.values[id] += value;
            } else {
                self.arcs.push((tail, head, value, colour(rng)));
                self.values.push(value);
            }
        }
    }

    pub fn into_instance(self, rng: &mut ChaCha8Rng, source: VertexId, sink: VertexId) -> Instance {
        let mut arcs = self.arcs;
        // Random slack above the flow value on a few arcs.
        for arc in arcs.iter_mut() {
            if rng.gen_bool(0.3) {
                arc.2 += rng.gen_range(1..=2);
            }
        }
        instance(self.vertex_count, arcs, self.values, source, sink)
    }
}

/// Random simple s→t walk: s, a random subset of middle vertices in
/// random order, t.
pub fn random_path(rng: &mut ChaCha8Rng, middle: &[VertexId], s: VertexId, t: VertexId) -> Vec<VertexId> {
    let mut pool = middle.to_vec();
    pool.shuffle(rng);
    pool.truncate(rng.gen_range(0..=pool.len()));
    let mut walk = vec![s];
    walk.extend(pool);
    walk.push(t);
    walk
}

/// Random simple closed walk over at least two of the given vertices.
pub fn random_cycle(rng: &mut ChaCha8Rng, vertices: &[VertexId]) -> Vec<VertexId> {
    let mut pool = vertices.to_vec();
    pool.shuffle(rng);
    pool.truncate(rng.gen_range(2..=pool.len().max(2)).min(pool.len()));
    pool.push(pool[0]);
    pool
}

/// General random valid flow: shared arcs, cycles, arbitrary colours,
/// plus capacity slack. Suitable for decomposition and round-trip tests.
pub fn random_valid_flow(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(3..=8);
    let (s, t) = (0, n - 1);
    let middle: Vec<VertexId> = (1..n - 1).collect();
    let all: Vec<VertexId> = (0..n).collect();
    let mut sp = Superposition::new(n);
    let palette = 1 + rng.gen_range(0..4) as u32;
    for _ in 0..rng.gen_range(1..=4) {
        let walk = random_path(rng, &middle, s, t);
        let value = rng.gen_range(1..=5);
        sp.stamp(rng, &walk, value, 0.5, |r| r.gen_range(1..=palette));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let walk = random_cycle(rng, &all);
        let value = rng.gen_range(1..=3);
        sp.stamp(rng, &walk, value, 0.5, |r| r.gen_range(1..=palette));
    }
    sp.into_instance(rng, s, t)
}

/// Acyclic monochromatic flow with every positive value in {a, b}:
/// fresh-arc superposition of forward paths over a topological order.
pub fn random_two_value_acyclic(rng: &mut ChaCha8Rng) -> (Instance, u64, u64) {
    let b = rng.gen_range(1..=6);
    let a = b + rng.gen_range(1..=9);
    let n = rng.gen_range(4..=9);
    let (s, t) = (0, n - 1);
    let mut sp = Superposition::new(n);
    for _ in 0..rng.gen_range(2..=5) {
        let mut middle: Vec<VertexId> = (1..n - 1).collect();
        middle.shuffle(rng);
        middle.truncate(rng.gen_range(0..n - 2));
        middle.sort_unstable();
        let mut walk = vec![s];
        walk.extend(middle);
        walk.push(t);
        let value = if rng.gen_bool(0.5) { a } else { b };
        sp.stamp(rng, &walk, value, 0.0, |_| 1);
    }
    let inst = sp.into_instance(rng, s, t);
    (inst, a, b)
}

/// λ-uniform flow on at most two (non-dense) colour labels, arbitrary
/// path shapes plus optional cycles, fresh arcs throughout.
pub fn random_bichromatic_uniform(rng: &mut ChaCha8Rng) -> (Instance, u64) {
    let lambda = rng.gen_range(1..=4);
    let c1 = rng.gen_range(1..=30);
    let c2 = c1 + rng.gen_range(1..=30);
    let n = rng.gen_range(3..=10);
    let (s, t) = (0, n - 1);
    let middle: Vec<VertexId> = (1..n - 1).collect();
    let all: Vec<VertexId> = (0..n).collect();
    let mut sp = Superposition::new(n);
    let pick = move |r: &mut ChaCha8Rng| if r.gen_bool(0.5) { c1 } else { c2 };
    for _ in 0..rng.gen_range(1..=5) {
        let walk = random_path(rng, &middle, s, t);
        sp.stamp(rng, &walk, lambda, 0.0, pick);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let walk = random_cycle(rng, &all);
        sp.stamp(rng, &walk, lambda, 0.0, pick);
    }
    let inst = sp.into_instance(rng, s, t);
    (inst, lambda)
}

/// Two divisible values with a colour-value correspondence: colour c1
/// arcs carry v1 and colour c2 arcs carry v2 (v2 | v1), including
/// monochromatic cycles on either side.
pub fn random_divisible_bichromatic(rng: &mut ChaCha8Rng) -> (Instance, u64, u64) {
    let v2 = rng.gen_range(1..=4);
    let v1 = v2 * rng.gen_range(1..=4);
    let c1 = rng.gen_range(1..=20);
    let c2 = c1 + rng.gen_range(1..=20);
    let n = rng.gen_range(3..=10);
    let (s, t) = (0, n - 1);
    let middle: Vec<VertexId> = (1..n - 1).collect();
    let all: Vec<VertexId> = (0..n).collect();
    let mut sp = Superposition::new(n);
    for _ in 0..rng.gen_range(1..=3) {
        let walk = random_path(rng, &middle, s, t);
        sp.stamp(rng, &walk, v1, 0.0, |_| c1);
    }
    for _ in 0..rng.gen_range(1..=3) {
        let walk = random_path(rng, &middle, s, t);
        sp.stamp(rng, &walk, v2, 0.0, |_| c2);
    }
    for _ in 0..rng.gen_range(0..=1) {
        let walk = random_cycle(rng, &all);
        if rng.gen_bool(0.5) {
            sp.stamp(rng, &walk, v1, 0.0, |_| c1);
        } else {
            sp.stamp(rng, &walk, v2, 0.0, |_| c2);
        }
    }
    let inst = sp.into_instance(rng, s, t);
    (inst, v1, v2)
}

/// Tiny instances for oracle equivalence against the full enumeration:
/// at most 4 vertices and 5 arcs, per-arc values capped at 4, arc reuse
/// encouraged, and cycles may pass through both terminals.
pub fn random_tiny_instance(rng: &mut ChaCha8Rng) -> Instance {
    loop {
        let n = rng.gen_range(2..=4);
        let (s, t) = (0, n - 1);
        let middle: Vec<VertexId> = (1..n - 1).collect();
        let all: Vec<VertexId> = (0..n).collect();
        let mut sp = Superposition::new(n);
        for _ in 0..rng.gen_range(1..=3) {
            let value = rng.gen_range(1..=2);
            if rng.gen_bool(0.3) && n >= 2 {
                let walk = random_cycle(rng, &all);
                sp.stamp(rng, &walk, value, 0.7, |r| r.gen_range(1..=3));
            } else {
                let walk = random_path(rng, &middle, s, t);
                sp.stamp(rng, &walk, value, 0.7, |r| r.gen_range(1..=3));
            }
        }
        if sp.arcs.len() <= 5 && sp.values.iter().all(|&x| x <= 4) {
            // No capacity slack here: the enumeration works on values only.
            return instance(sp.vertex_count, sp.arcs, sp.values, s, t);
        }
    }
}

/// Random valid 3-Partition parameters for r = 2: six values strictly
/// inside (T/4, T/2) summing to 2T, found by adjusting the last value.
pub fn random_three_partition_params(rng: &mut ChaCha8Rng) -> (Vec<u64>, u64) {
    random_three_partition_params_r(rng, 2)
}

/// As above for an arbitrary box count r >= 1.
pub fn random_three_partition_params_r(rng: &mut ChaCha8Rng, r: u64) -> (Vec<u64>, u64) {
    loop {
        let target = rng.gen_range(13..=29);
        let low = target / 4 + 1;
        let high = (target - 1) / 2;
        if low > high {
            continue;
        }
        let count = 3 * r as usize;
        let mut values: Vec<u64> = (0..count - 1).map(|_| rng.gen_range(low..=high)).collect();
        let sum: u64 = values.iter().sum();
        if sum >= r * target {
            continue;
        }
        let last = r * target - sum;
        if 4 * last > target && 2 * last < target {
            values.push(last);
            return (values, target);
        }
    }
}

/// Random linkage base: a small simple digraph with four distinct
/// terminals whose degree requirements hold.
pub fn random_linkage_base(rng: &mut ChaCha8Rng) -> LinkageBase {
    loop {
        let n = rng.gen_range(4..=6);
        let m = rng.gen_range(2..=7);
        let mut arcs = Vec::with_capacity(m);
        for _ in 0..m {
            let tail = rng.gen_range(0..n);
            let head = (tail + rng.gen_range(1..n)) % n;
            arcs.push((tail, head));
        }
        let mut ids: Vec<VertexId> = (0..n).collect();
        ids.shuffle(rng);
        let base = LinkageBase {
            vertex_count: n,
            arcs,
            u1: ids[0],
            u2: ids[1],
            v1: ids[2],
            v2: ids[3],
        };
        let out_ok = [base.u1, base.u2]
            .iter()
            .all(|&u| base.arcs.iter().any(|&(tail, _)| tail == u));
        let in_ok = [base.v1, base.v2]
            .iter()
            .all(|&v| base.arcs.iter().any(|&(_, head)| head == v));
        if out_ok && in_ok {
            return base;
        }
    }
}

/// Random 1-in-3SAT formula over exactly n variables (variable n always
/// mentioned so the generator derives the intended n).
pub fn random_one_in_three_formula(rng: &mut ChaCha8Rng, n: usize, max_clauses: usize) -> Vec<[i32; 3]> {
    let m = rng.gen_range(1..=max_clauses);
    let mut clauses = Vec::with_capacity(m);
    for j in 0..m {
        loop {
            let mut vars: Vec<i32> = (1..=n as i32).collect();
            vars.shuffle(rng);
            let mut clause = [0i32; 3];
            for (slot, &var) in clause.iter_mut().zip(vars.iter().take(3)) {
                *slot = if rng.gen_bool(0.5) { var } else { -var };
            }
            // Make sure variable n appears somewhere in the formula.
            if j == 0 && !clause.iter().any(|l| l.unsigned_abs() as usize == n) {
                continue;
            }
            clauses.push(clause);
            break;
        }
    }
    clauses
}

/// Random monochromatic base with values in {1, 2, 4} for the splittable
/// embedding: fresh-arc forward paths, so it is acyclic and tiny.
pub fn random_splittable_base(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(3..=5);
    let (s, t) = (0, n - 1);
    let mut sp = Superposition::new(n);
    for _ in 0..rng.gen_range(2..=4) {
        let mut middle: Vec<VertexId> = (1..n - 1).collect();
        middle.shuffle(rng);
        middle.truncate(rng.gen_range(0..n - 2));
        middle.sort_unstable();
        let mut walk = vec![s];
        walk.extend(middle);
        walk.push(t);
        let value = *[1u64, 2, 4].choose(rng).unwrap();
        sp.stamp(rng, &walk, value, 0.0, |_| 1);
    }
    instance(sp.vertex_count, sp.arcs.clone(), sp.values.clone(), s, t)
}
