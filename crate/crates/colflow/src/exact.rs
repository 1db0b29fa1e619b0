//! Exact minimum-cost search: branch-and-bound over path extractions with
//! memoization on residual flow fingerprints and an admissible
//! bottleneck/colour lower bound. Ground truth for every small instance.

use crate::core::{
    ArcId, ColouredNetwork, Decomposition, Flow, FlowError, Instance, PathFlow,
    path_colour_count, validate_flow,
};
use crate::decompose::{extract_cycles, find_path, subtract_along, widest_bottleneck};
use std::collections::HashMap;
use std::rc::Rc;
use thiserror::Error;

/// Objective for the exact solver: the distinct-colour cost or a plain
/// path count (the k-splittable objective).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMode {
    ColourCost,
    PathCount,
}

/// Resource limits for the search. The node budget counts expanded
/// residual states; the memo cap stops further insertions (never
/// correctness, only speed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub node_budget: u64,
    pub memo_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: 10_000_000,
            memo_cap: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub optimal_cost: u64,
    pub decomposition: Decomposition,
    pub nodes_explored: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("node budget exhausted after {nodes_explored} expansions; result inconclusive")]
    BudgetExceeded { nodes_explored: u64 },
}

struct WitnessNode {
    arcs: Vec<ArcId>,
    value: u64,
    next: Option<Rc<WitnessNode>>,
}

#[derive(Clone)]
struct Entry {
    cost: u64,
    witness: Option<Rc<WitnessNode>>,
}

#[derive(Clone)]
enum MemoVal {
    /// The state's true optimum.
    Exact(Entry),
    /// The state's optimum provably exceeds this allowance.
    Infeasible(u64),
}

struct Search<'a> {
    network: &'a ColouredNetwork,
    source: usize,
    sink: usize,
    mode: CostMode,
    limits: SearchLimits,
    nodes: u64,
    memo: HashMap<Box<[u64]>, MemoVal>,
    /// Topological positions of the root support when it is acyclic.
    /// Path extraction only shrinks the support, so the order stays
    /// valid in every residual state.
    topo_pos: Option<Vec<usize>>,
}

/// Topological positions of the positive support, or `None` when it has a
/// cycle.
fn topo_positions(network: &ColouredNetwork, values: &[u64]) -> Option<Vec<usize>> {
    let n = network.vertex_count();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, arc) in network.arcs().iter().enumerate() {
        if values[id] > 0 {
            indeg[arc.head] += 1;
            out[arc.tail].push(arc.head);
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut pos = vec![usize::MAX; n];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        pos[v] = head;
        head += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    (head == n).then_some(pos)
}

/// Enumerates every simple source-sink path in the positive support of
/// `values`. Parallel arcs that agree on head, colour, and residual value
/// are interchangeable, so only the smallest id of each group is offered.
fn enumerate_paths(
    network: &ColouredNetwork,
    values: &[u64],
    source: usize,
    sink: usize,
) -> Vec<Vec<ArcId>> {
    let n = network.vertex_count();
    let mut adjacency: Vec<Vec<ArcId>> = vec![Vec::new(); n];
    for (id, arc) in network.arcs().iter().enumerate() {
        if values[id] > 0 {
            let bucket = &mut adjacency[arc.tail];
            let duplicate = bucket.iter().any(|&other| {
                let o = network.arc(other);
                o.head == arc.head && o.colour == arc.colour && values[other] == values[id]
            });
            if !duplicate {
                bucket.push(id);
            }
        }
    }
    let mut paths = Vec::new();
    let mut on_path = vec![false; n];
    let mut current: Vec<ArcId> = Vec::new();
    fn dfs(
        network: &ColouredNetwork,
        adjacency: &[Vec<ArcId>],
        v: usize,
        sink: usize,
        on_path: &mut [bool],
        current: &mut Vec<ArcId>,
        paths: &mut Vec<Vec<ArcId>>,
    ) {
        if v == sink {
            paths.push(current.clone());
            return;
        }
        on_path[v] = true;
        for &id in &adjacency[v] {
            let head = network.arc(id).head;
            if !on_path[head] {
                current.push(id);
                dfs(network, adjacency, head, sink, on_path, current, paths);
                current.pop();
            }
        }
        on_path[v] = false;
    }
    dfs(
        network,
        &adjacency,
        source,
        sink,
        &mut on_path,
        &mut current,
        &mut paths,
    );
    paths
}

/// Smallest number of distinct colours on any source-sink path in the
/// positive support; `floor` is a known admissible value to start from.
/// Falls back to `floor` when the support has more than 12 colours.
fn min_path_colours(
    network: &ColouredNetwork,
    values: &[u64],
    source: usize,
    sink: usize,
    floor: u64,
) -> u64 {
    let mut palette: Vec<u32> = network
        .arcs()
        .iter()
        .zip(values)
        .filter(|(_, &x)| x > 0)
        .map(|(a, _)| a.colour)
        .collect();
    palette.sort_unstable();
    palette.dedup();
    let c = palette.len();
    if c == 0 {
        return floor.max(1);
    }
    if c > 12 {
        return floor.max(1);
    }
    let colour_bit = |colour: u32| palette.binary_search(&colour).unwrap();
    let n = network.vertex_count();
    for k in floor.max(1)..=(c as u64) {
        // BFS over (vertex, colour mask) states, masks capped at k bits.
        let mut seen = vec![false; n << c];
        let mut queue = std::collections::VecDeque::new();
        seen[source << c] = true;
        queue.push_back((source, 0u32));
        while let Some((v, mask)) = queue.pop_front() {
            if v == sink {
                return k;
            }
            for (id, arc) in network.arcs().iter().enumerate() {
                if arc.tail != v || values[id] == 0 {
                    continue;
                }
                let mask2 = mask | (1 << colour_bit(arc.colour));
                if mask2.count_ones() as u64 > k {
                    continue;
                }
                let key = (arc.head << c) | mask2 as usize;
                if !seen[key] {
                    seen[key] = true;
                    queue.push_back((arc.head, mask2));
                }
            }
        }
    }
    c as u64
}

/// Admissible lower bound on the remaining cost: at least
/// ceil(remaining / maximum extractable value) paths, each of colour
/// count at least `kappa`.
fn count_bound(remaining: u64, widest: u64, kappa: u64) -> u64 {
    if remaining == 0 {
        return 0;
    }
    debug_assert!(widest > 0);
    let step = widest.min(remaining);
    remaining.div_ceil(step) * kappa
}

impl<'a> Search<'a> {
    fn move_weight(&self, arcs: &[ArcId]) -> u64 {
        match self.mode {
            CostMode::ColourCost => path_colour_count(self.network, arcs) as u64,
            CostMode::PathCount => 1,
        }
    }

    /// Lower bound on the number of paths still to extract, from prefix
    /// cuts of the topological order. On an acyclic support nothing can
    /// hide in a circulation, so every positive arc lies on some future
    /// path, every path crosses each source/sink separating prefix cut
    /// exactly once, and the largest crossing count is a path count floor.
    fn cut_path_bound(&self, values: &[u64]) -> u64 {
        let Some(pos) = &self.topo_pos else { return 0 };
        let (lo, hi) = (pos[self.source] + 1, pos[self.sink]);
        if lo > hi {
            return 0;
        }
        let mut diff = vec![0i64; pos.len() + 1];
        for (id, arc) in self.network.arcs().iter().enumerate() {
            if values[id] > 0 {
                let (a, b) = (pos[arc.tail], pos[arc.head]);
                debug_assert!(a < b, "topological order violated");
                diff[a + 1] += 1;
                diff[b + 1] -= 1;
            }
        }
        let mut run = 0i64;
        let mut best = 0i64;
        for (k, d) in diff.iter().enumerate().take(hi + 1).skip(1) {
            run += d;
            if k >= lo {
                best = best.max(run);
            }
        }
        best as u64
    }

    /// Feasible completion by repeated widest-path extraction. Every step
    /// is a legal search move, so the result seeds `best` with an
    /// achievable cost instead of making the first dive run unpruned.
    fn greedy_completion(&self, values: &[u64], remaining: u64) -> Entry {
        let mut vals: Box<[u64]> = values.into();
        let mut rem = remaining;
        let mut parts: Vec<(Vec<ArcId>, u64)> = Vec::new();
        let mut cost = 0u64;
        while rem > 0 {
            let w = widest_bottleneck(self.network, &vals, self.source, self.sink).min(rem);
            let arcs = find_path(self.network, &vals, self.source, self.sink, w)
                .expect("the widest bottleneck certifies such a path");
            subtract_along(&mut vals, &arcs, w);
            cost += self.move_weight(&arcs);
            parts.push((arcs, w));
            rem -= w;
        }
        let mut witness = None;
        for (arcs, value) in parts.into_iter().rev() {
            witness = Some(Rc::new(WitnessNode {
                arcs,
                value,
                next: witness,
            }));
        }
        Entry { cost, witness }
    }

    fn record_exact(&mut self, values: &[u64], entry: Entry) {
        if let Some(slot) = self.memo.get_mut(values) {
            *slot = MemoVal::Exact(entry);
        } else if self.memo.len() < self.limits.memo_cap {
            self.memo.insert(values.into(), MemoVal::Exact(entry));
        }
    }

    fn record_infeasible(&mut self, values: &[u64], allowance: u64) {
        match self.memo.get_mut(values) {
            Some(MemoVal::Exact(_)) => {}
            Some(MemoVal::Infeasible(proven)) => *proven = (*proven).max(allowance),
            None => {
                if self.memo.len() < self.limits.memo_cap {
                    self.memo
                        .insert(values.into(), MemoVal::Infeasible(allowance));
                }
            }
        }
    }

    /// Exact minimum cost of decomposing the residual `values` (of flow
    /// value `remaining`), provided it does not exceed `allowance`;
    /// `None` certifies that it does. `kappa_floor` is an admissible
    /// colour floor inherited from the parent state. Threading the
    /// incumbent through `allowance` lets one good solution prune
    /// subtrees everywhere, not just among its own siblings.
    fn solve(
        &mut self,
        values: &[u64],
        remaining: u64,
        kappa_floor: u64,
        allowance: u64,
    ) -> Result<Option<Entry>, ExactError> {
        if remaining == 0 {
            return Ok(Some(Entry {
                cost: 0,
                witness: None,
            }));
        }
        match self.memo.get(values) {
            Some(MemoVal::Exact(entry)) => {
                return Ok((entry.cost <= allowance).then(|| entry.clone()));
            }
            Some(MemoVal::Infeasible(proven)) if allowance <= *proven => return Ok(None),
            _ => {}
        }
        self.nodes += 1;
        if self.nodes > self.limits.node_budget {
            return Err(ExactError::BudgetExceeded {
                nodes_explored: self.nodes,
            });
        }
        let widest = widest_bottleneck(self.network, values, self.source, self.sink);
        debug_assert!(widest > 0, "positive remaining value implies a path");
        let kappa = match self.mode {
            CostMode::ColourCost => {
                min_path_colours(self.network, values, self.source, self.sink, kappa_floor)
            }
            CostMode::PathCount => 1,
        };
        let state_bound =
            count_bound(remaining, widest, kappa).max(self.cut_path_bound(values) * kappa);
        if state_bound > allowance {
            self.record_infeasible(values, allowance);
            return Ok(None);
        }
        let mut best = self.greedy_completion(values, remaining);
        if best.cost == state_bound {
            let entry = best.clone();
            self.record_exact(values, best);
            return Ok(Some(entry));
        }
        // Only strictly-better-than-best solutions within the allowance
        // matter from here on.
        let mut cap = allowance.min(best.cost.saturating_sub(1));
        let mut moves: Vec<(u64, u64, Vec<ArcId>)> =
            enumerate_paths(self.network, values, self.source, self.sink)
                .into_iter()
                .map(|arcs| {
                    let bottleneck = arcs.iter().map(|&id| values[id]).min().unwrap();
                    let value = bottleneck.min(remaining);
                    (self.move_weight(&arcs), value, arcs)
                })
                .collect();
        // Cheap moves first, larger extractions first, then arc ids.
        moves.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));
        for (weight, value, arcs) in moves {
            // Sorted ascending by weight, so no later move fits either.
            if weight > cap {
                break;
            }
            let mut child: Box<[u64]> = values.into();
            subtract_along(&mut child, &arcs, value);
            let child_remaining = remaining - value;
            // Admissible child bound: the parent's widest value and kappa
            // still bound the shrunken support, and the prefix cuts see
            // the child support directly.
            let child_bound = count_bound(child_remaining, widest, kappa)
                .max(self.cut_path_bound(&child) * kappa);
            if weight.saturating_add(child_bound) > cap {
                continue;
            }
            if let Some(sub) = self.solve(&child, child_remaining, kappa, cap - weight)? {
                let total = weight + sub.cost;
                debug_assert!(total <= cap);
                best = Entry {
                    cost: total,
                    witness: Some(Rc::new(WitnessNode {
                        arcs,
                        value,
                        next: sub.witness,
                    })),
                };
                if best.cost == state_bound {
                    break;
                }
                cap = cap.min(best.cost - 1);
            }
        }
        // Pruning only ever discards subtrees whose optimum exceeds the
        // cap in force, and the cap never drops below best - 1, so a
        // surviving best within the allowance is the state's optimum.
        if best.cost <= allowance {
            let entry = best.clone();
            self.record_exact(values, best);
            Ok(Some(entry))
        } else {
            self.record_infeasible(values, allowance);
            Ok(None)
        }
    }
}

fn witness_to_decomposition(
    network: &ColouredNetwork,
    flow: &Flow,
    witness: Option<Rc<WitnessNode>>,
) -> Decomposition {
    let mut values = flow.values.clone();
    let mut paths = Vec::new();
    let mut node = witness;
    while let Some(w) = node {
        subtract_along(&mut values, &w.arcs, w.value);
        paths.push(PathFlow {
            arcs: w.arcs.clone(),
            value: w.value,
        });
        node = w.next.clone();
    }
    let circulation = extract_cycles(network, &mut values);
    Decomposition::new(network, paths, circulation)
}

/// Provably minimum-cost decomposition under the chosen mode, or an
/// explicit budget error (never a wrong optimum).
pub fn exact_min_cost_with_limits(
    instance: &Instance,
    mode: CostMode,
    limits: SearchLimits,
) -> Result<ExactResult, ExactError> {
    let remaining = validate_flow(&instance.network, &instance.flow)?;
    let mut search = Search {
        network: &instance.network,
        source: instance.flow.source,
        sink: instance.flow.sink,
        mode,
        limits,
        nodes: 0,
        memo: HashMap::new(),
        topo_pos: topo_positions(&instance.network, &instance.flow.values),
    };
    let entry = search
        .solve(&instance.flow.values, remaining, 1, u64::MAX)?
        .expect("an unbounded allowance always admits the optimum");
    let decomposition = witness_to_decomposition(&instance.network, &instance.flow, entry.witness);
    debug_assert_eq!(match mode {
        CostMode::ColourCost => decomposition.cost,
        CostMode::PathCount => decomposition.paths.len() as u64,
    }, entry.cost);
    Ok(ExactResult {
        optimal_cost: entry.cost,
        decomposition,
        nodes_explored: search.nodes,
    })
}

/// [`exact_min_cost_with_limits`] with the default limits.
pub fn exact_min_cost(instance: &Instance, mode: CostMode) -> Result<ExactResult, ExactError> {
    exact_min_cost_with_limits(instance, mode, SearchLimits::default())
}

/// Decides whether a decomposition of colour cost at most `k` exists;
/// returns the witness on yes. Runs the search with allowance `k`
/// directly, which prunes far harder than computing the full optimum.
pub fn decide_k_cost_with_limits(
    instance: &Instance,
    k: u64,
    limits: SearchLimits,
) -> Result<Option<Decomposition>, ExactError> {
    let remaining = validate_flow(&instance.network, &instance.flow)?;
    let mut search = Search {
        network: &instance.network,
        source: instance.flow.source,
        sink: instance.flow.sink,
        mode: CostMode::ColourCost,
        limits,
        nodes: 0,
        memo: HashMap::new(),
        topo_pos: topo_positions(&instance.network, &instance.flow.values),
    };
    match search.solve(&instance.flow.values, remaining, 1, k)? {
        Some(entry) => {
            let decomposition =
                witness_to_decomposition(&instance.network, &instance.flow, entry.witness);
            debug_assert!(decomposition.cost <= k);
            Ok(Some(decomposition))
        }
        None => Ok(None),
    }
}

/// [`decide_k_cost_with_limits`] with the default limits.
pub fn decide_k_cost(instance: &Instance, k: u64) -> Result<Option<Decomposition>, ExactError> {
    decide_k_cost_with_limits(instance, k, SearchLimits::default())
}

/// Admissible lower bound on the colour cost of the whole instance:
/// ceil(|x| / widest bottleneck) times the minimum number of distinct
/// colours on any source-sink path through positive arcs.
pub fn lower_bound(instance: &Instance) -> u64 {
    let network = &instance.network;
    let flow = &instance.flow;
    let remaining = instance.flow_value();
    if remaining == 0 {
        return 0;
    }
    let widest = widest_bottleneck(network, &flow.values, flow.source, flow.sink);
    let kappa = min_path_colours(network, &flow.values, flow.source, flow.sink, 1);
    count_bound(remaining, widest, kappa)
}
