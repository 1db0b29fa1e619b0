//! Core types for arc-coloured flow networks: networks, flows, path and
//! cycle flows, decompositions, and the structural checks shared by every
//! algorithm in the crate.

use std::collections::BTreeSet;
use thiserror::Error;

/// Vertices are dense indices `0..vertex_count`.
pub type VertexId = usize;

/// Arc ids are positional: the arc with id `i` is `network.arcs()[i]`.
/// Parallel arcs are permitted and distinguished only by id.
pub type ArcId = usize;

/// A directed arc with an integer capacity and a colour label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: ArcId,
    pub tail: VertexId,
    pub head: VertexId,
    pub capacity: u64,
    pub colour: u32,
}

/// An arc-coloured multidigraph with integer arc capacities.
///
/// Self-loops are rejected at construction. Parallel arcs are allowed.
/// Colours are arbitrary positive integers; they need not be dense.
/// A zero-capacity arc is treated as absent by every algorithm, which
/// lets derived networks ([`support`], [`colour_span`]) keep the arc id
/// space of their parent intact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredNetwork {
    vertex_count: usize,
    arcs: Vec<Arc>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("arc {index}: vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange {
        index: usize,
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("arc {index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: VertexId },
    #[error("arc {index}: colour must be a positive integer")]
    ZeroColour { index: usize },
}

impl ColouredNetwork {
    /// Builds a network from `(tail, head, capacity, colour)` tuples.
    /// Arc ids are assigned in input order.
    pub fn new(
        vertex_count: usize,
        arcs: Vec<(VertexId, VertexId, u64, u32)>,
    ) -> Result<Self, NetworkError> {
        let mut built = Vec::with_capacity(arcs.len());
        for (index, (tail, head, capacity, colour)) in arcs.into_iter().enumerate() {
            for v in [tail, head] {
                if v >= vertex_count {
                    return Err(NetworkError::VertexOutOfRange {
                        index,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if tail == head {
                return Err(NetworkError::SelfLoop {
                    index,
                    vertex: tail,
                });
            }
            if colour == 0 {
                return Err(NetworkError::ZeroColour { index });
            }
            built.push(Arc {
                id: index,
                tail,
                head,
                capacity,
                colour,
            });
        }
        Ok(ColouredNetwork {
            vertex_count,
            arcs: built,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id]
    }

    /// Arcs that are present for algorithmic purposes (capacity > 0).
    pub fn positive_arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(|a| a.capacity > 0)
    }

    /// Distinct colours among positive-capacity arcs, ascending.
    pub fn colour_set(&self) -> BTreeSet<u32> {
        self.positive_arcs().map(|a| a.colour).collect()
    }

    /// Returns a copy with every capacity replaced by the given vector.
    pub(crate) fn with_capacities(&self, capacities: &[u64]) -> ColouredNetwork {
        debug_assert_eq!(capacities.len(), self.arcs.len());
        let mut net = self.clone();
        for (arc, &u) in net.arcs.iter_mut().zip(capacities) {
            arc.capacity = u;
        }
        net
    }
}

/// A flow assignment for a specific network: one value per arc id, plus
/// the source and sink vertices. Operations take the network alongside
/// the flow; [`Instance`] bundles the two for ownership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub source: VertexId,
    pub sink: VertexId,
    pub values: Vec<u64>,
}

impl Flow {
    pub fn new(source: VertexId, sink: VertexId, values: Vec<u64>) -> Self {
        Flow {
            source,
            sink,
            values,
        }
    }

    /// Distinct positive flow values, ascending.
    pub fn positive_value_set(&self) -> BTreeSet<u64> {
        self.values.iter().copied().filter(|&x| x > 0).collect()
    }
}

/// Distinct colours among arcs carrying positive flow, ascending.
pub fn positive_colour_set(network: &ColouredNetwork, flow: &Flow) -> BTreeSet<u32> {
    network
        .arcs()
        .iter()
        .zip(&flow.values)
        .filter(|(_, &x)| x > 0)
        .map(|(a, _)| a.colour)
        .collect()
}

/// Outflow minus inflow of `v` under `flow`.
pub fn balance(network: &ColouredNetwork, flow: &Flow, v: VertexId) -> i128 {
    let mut b = 0i128;
    for (arc, &x) in network.arcs().iter().zip(&flow.values) {
        if arc.tail == v {
            b += x as i128;
        }
        if arc.head == v {
            b -= x as i128;
        }
    }
    b
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowViolation {
    #[error("flow vector has {got} entries for {expected} arcs")]
    ValueCountMismatch { expected: usize, got: usize },
    #[error("source vertex {0} out of range")]
    SourceOutOfRange(VertexId),
    #[error("sink vertex {0} out of range")]
    SinkOutOfRange(VertexId),
    #[error("source equals sink ({0})")]
    SourceEqualsSink(VertexId),
    #[error("arc {arc}: flow {flow} exceeds capacity {capacity}")]
    CapacityExceeded { arc: ArcId, flow: u64, capacity: u64 },
    #[error("vertex {vertex}: balance {balance}, expected 0")]
    ImbalancedVertex { vertex: VertexId, balance: i128 },
    #[error("source balance {0} is negative")]
    NegativeValue(i128),
}

/// Returned by [`validate_flow`]; lists every violated arc and vertex.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid flow: {}", join_violations(violations))]
pub struct FlowError {
    pub violations: Vec<FlowViolation>,
}

fn join_violations(violations: &[FlowViolation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Checks capacity respect, conservation at every non-terminal vertex,
/// and a nonnegative value; returns the flow value |x| on success.
pub fn validate_flow(network: &ColouredNetwork, flow: &Flow) -> Result<u64, FlowError> {
    let mut violations = Vec::new();
    if flow.values.len() != network.arc_count() {
        violations.push(FlowViolation::ValueCountMismatch {
            expected: network.arc_count(),
            got: flow.values.len(),
        });
        return Err(FlowError { violations });
    }
    if flow.source >= network.vertex_count() {
        violations.push(FlowViolation::SourceOutOfRange(flow.source));
    }
    if flow.sink >= network.vertex_count() {
        violations.push(FlowViolation::SinkOutOfRange(flow.sink));
    }
    if flow.source == flow.sink {
        violations.push(FlowViolation::SourceEqualsSink(flow.source));
    }
    if !violations.is_empty() {
        return Err(FlowError { violations });
    }
    for (arc, &x) in network.arcs().iter().zip(&flow.values) {
        if x > arc.capacity {
            violations.push(FlowViolation::CapacityExceeded {
                arc: arc.id,
                flow: x,
                capacity: arc.capacity,
            });
        }
    }
    for v in 0..network.vertex_count() {
        if v == flow.source || v == flow.sink {
            continue;
        }
        let b = balance(network, flow, v);
        if b != 0 {
            violations.push(FlowViolation::ImbalancedVertex {
                vertex: v,
                balance: b,
            });
        }
    }
    let value = balance(network, flow, flow.source);
    if value < 0 {
        violations.push(FlowViolation::NegativeValue(value));
    }
    if violations.is_empty() {
        Ok(value as u64)
    } else {
        Err(FlowError { violations })
    }
}

/// Flow value |x| of a flow assumed valid.
pub fn flow_value(network: &ColouredNetwork, flow: &Flow) -> u64 {
    let b = balance(network, flow, flow.source);
    debug_assert!(b >= 0);
    b.max(0) as u64
}

/// The support network for threshold `a`: arcs with `x(arc) >= a` keep
/// capacity exactly `x(arc)`, all other arcs get capacity 0. Vertex set
/// and arc ids are unchanged.
pub fn support(network: &ColouredNetwork, flow: &Flow, a: u64) -> ColouredNetwork {
    assert!(a >= 1, "support threshold must be at least 1");
    let caps: Vec<u64> = flow
        .values
        .iter()
        .map(|&x| if x >= a { x } else { 0 })
        .collect();
    network.with_capacities(&caps)
}

/// The subnetwork induced by arcs of one colour: matching arcs keep
/// their capacity, all others get capacity 0.
pub fn colour_span(network: &ColouredNetwork, colour: u32) -> ColouredNetwork {
    let caps: Vec<u64> = network
        .arcs()
        .iter()
        .map(|a| if a.colour == colour { a.capacity } else { 0 })
        .collect();
    network.with_capacities(&caps)
}

/// Number of distinct colours among the arcs of a path or cycle.
pub fn path_colour_count(network: &ColouredNetwork, arcs: &[ArcId]) -> usize {
    arcs.iter()
        .map(|&id| network.arc(id).colour)
        .collect::<BTreeSet<_>>()
        .len()
}

/// A path flow: consecutive arcs from source to sink, all carrying `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFlow {
    pub arcs: Vec<ArcId>,
    pub value: u64,
}

impl PathFlow {
    /// The vertex sequence of the path, length `arcs.len() + 1`.
    pub fn vertices(&self, network: &ColouredNetwork) -> Vec<VertexId> {
        let mut vs = Vec::with_capacity(self.arcs.len() + 1);
        for &id in &self.arcs {
            vs.push(network.arc(id).tail);
        }
        if let Some(&last) = self.arcs.last() {
            vs.push(network.arc(last).head);
        }
        vs
    }
}

/// A cycle flow: consecutive arcs closing on the first tail, all
/// carrying `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleFlow {
    pub arcs: Vec<ArcId>,
    pub value: u64,
}

impl CycleFlow {
    /// The closed vertex sequence of the cycle, length `arcs.len() + 1`;
    /// the first vertex is repeated at the end.
    pub fn vertices(&self, network: &ColouredNetwork) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.arcs.iter().map(|&id| network.arc(id).tail).collect();
        if let Some(&first) = vs.first() {
            vs.push(first);
        }
        vs
    }
}

/// A decomposition of a flow into path flows plus a circulation (cycle
/// flows). The cost is the total number of distinct colours summed over
/// the path flows; cycles are free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub paths: Vec<PathFlow>,
    pub circulation: Vec<CycleFlow>,
    pub cost: u64,
}

impl Decomposition {
    pub fn new(
        network: &ColouredNetwork,
        paths: Vec<PathFlow>,
        circulation: Vec<CycleFlow>,
    ) -> Self {
        let cost = paths
            .iter()
            .map(|p| path_colour_count(network, &p.arcs) as u64)
            .sum();
        Decomposition {
            paths,
            circulation,
            cost,
        }
    }

    pub fn empty() -> Self {
        Decomposition {
            paths: Vec::new(),
            circulation: Vec::new(),
            cost: 0,
        }
    }
}

/// Total colour cost of a decomposition (recomputed, not the stored field).
pub fn decomposition_cost(network: &ColouredNetwork, decomposition: &Decomposition) -> u64 {
    decomposition
        .paths
        .iter()
        .map(|p| path_colour_count(network, &p.arcs) as u64)
        .sum()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("path {index}: {reason}")]
    MalformedPath { index: usize, reason: String },
    #[error("cycle {index}: {reason}")]
    MalformedCycle { index: usize, reason: String },
    #[error("arc {arc}: decomposition carries {got}, flow has {expected}")]
    ArcSumMismatch { arc: ArcId, expected: u64, got: u64 },
    #[error("stated cost {stated} differs from computed cost {computed}")]
    CostMismatch { stated: u64, computed: u64 },
}

fn check_path(
    network: &ColouredNetwork,
    flow: &Flow,
    path: &PathFlow,
    index: usize,
) -> Result<(), VerifyError> {
    let fail = |reason: &str| VerifyError::MalformedPath {
        index,
        reason: reason.to_string(),
    };
    if path.arcs.is_empty() {
        return Err(fail("empty arc list"));
    }
    if path.value == 0 {
        return Err(fail("value must be positive"));
    }
    let first = network.arc(path.arcs[0]);
    if first.tail != flow.source {
        return Err(fail("does not start at the source"));
    }
    let last = network.arc(*path.arcs.last().unwrap());
    if last.head != flow.sink {
        return Err(fail("does not end at the sink"));
    }
    let mut seen = BTreeSet::new();
    seen.insert(first.tail);
    for window in path.arcs.windows(2) {
        if network.arc(window[0]).head != network.arc(window[1]).tail {
            return Err(fail("arcs are not consecutive"));
        }
    }
    for &id in &path.arcs {
        let head = network.arc(id).head;
        if !seen.insert(head) {
            return Err(fail("repeats a vertex (path must be simple)"));
        }
    }
    Ok(())
}

fn check_cycle(
    network: &ColouredNetwork,
    cycle: &CycleFlow,
    index: usize,
) -> Result<(), VerifyError> {
    let fail = |reason: &str| VerifyError::MalformedCycle {
        index,
        reason: reason.to_string(),
    };
    if cycle.arcs.is_empty() {
        return Err(fail("empty arc list"));
    }
    if cycle.value == 0 {
        return Err(fail("value must be positive"));
    }
    for window in cycle.arcs.windows(2) {
        if network.arc(window[0]).head != network.arc(window[1]).tail {
            return Err(fail("arcs are not consecutive"));
        }
    }
    let first = network.arc(cycle.arcs[0]);
    let last = network.arc(*cycle.arcs.last().unwrap());
    if last.head != first.tail {
        return Err(fail("does not close on its first vertex"));
    }
    let mut seen = BTreeSet::new();
    for &id in &cycle.arcs {
        if !seen.insert(network.arc(id).tail) {
            return Err(fail("repeats a vertex (cycle must be simple)"));
        }
    }
    Ok(())
}

/// Verifies that a decomposition exactly reproduces the given flow:
/// every component is a well-formed simple path from source to sink or
/// a simple cycle, per-arc value sums match the flow, and the stored
/// cost matches the recomputed one. Returns the cost.
pub fn verify_decomposition(
    network: &ColouredNetwork,
    flow: &Flow,
    decomposition: &Decomposition,
) -> Result<u64, VerifyError> {
    validate_flow(network, flow)?;
    for (index, path) in decomposition.paths.iter().enumerate() {
        check_path(network, flow, path, index)?;
    }
    for (index, cycle) in decomposition.circulation.iter().enumerate() {
        check_cycle(network, cycle, index)?;
    }
    let mut sums = vec![0u64; network.arc_count()];
    for path in &decomposition.paths {
        for &id in &path.arcs {
            sums[id] += path.value;
        }
    }
    for cycle in &decomposition.circulation {
        for &id in &cycle.arcs {
            sums[id] += cycle.value;
        }
    }
    for (id, (&got, &expected)) in sums.iter().zip(&flow.values).enumerate() {
        if got != expected {
            return Err(VerifyError::ArcSumMismatch { arc: id, expected, got });
        }
    }
    let computed = decomposition_cost(network, decomposition);
    if computed != decomposition.cost {
        return Err(VerifyError::CostMismatch {
            stated: decomposition.cost,
            computed,
        });
    }
    Ok(computed)
}

/// True when the subgraph of positive-capacity arcs has no directed cycle.
pub fn is_acyclic(network: &ColouredNetwork) -> bool {
    let n = network.vertex_count();
    let mut indegree = vec![0usize; n];
    for arc in network.positive_arcs() {
        indegree[arc.head] += 1;
    }
    let mut queue: Vec<VertexId> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop() {
        removed += 1;
        for arc in network.positive_arcs() {
            if arc.tail == v {
                indegree[arc.head] -= 1;
                if indegree[arc.head] == 0 {
                    queue.push(arc.head);
                }
            }
        }
    }
    removed == n
}

/// A decomposition problem: a network, a flow on it, and an optional
/// decision bound on the colour cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub network: ColouredNetwork,
    pub flow: Flow,
    pub bound: Option<u64>,
}

impl Instance {
    /// Bundles a network with a flow, validating the flow.
    pub fn new(
        network: ColouredNetwork,
        flow: Flow,
        bound: Option<u64>,
    ) -> Result<Self, FlowError> {
        validate_flow(&network, &flow)?;
        Ok(Instance {
            network,
            flow,
            bound,
        })
    }

    pub fn flow_value(&self) -> u64 {
        flow_value(&self.network, &self.flow)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_path_net() -> (ColouredNetwork, Flow) {
        // s=0, a=1, t=2; two routes s->a->t with different colours.
        let net = ColouredNetwork::new(
            3,
            vec![(0, 1, 5, 1), (1, 2, 5, 1), (0, 1, 3, 2), (1, 2, 3, 2)],
        )
        .unwrap();
        let flow = Flow::new(0, 2, vec![5, 5, 3, 3]);
        (net, flow)
    }

    #[test]
    fn rejects_self_loop() {
        let err = ColouredNetwork::new(2, vec![(1, 1, 1, 1)]).unwrap_err();
        assert!(matches!(err, NetworkError::SelfLoop { .. }));
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let err = ColouredNetwork::new(2, vec![(0, 2, 1, 1)]).unwrap_err();
        assert!(matches!(err, NetworkError::VertexOutOfRange { .. }));
    }

    #[test]
    fn balance_and_value() {
        let (net, flow) = two_path_net();
        assert_eq!(balance(&net, &flow, 0), 8);
        assert_eq!(balance(&net, &flow, 1), 0);
        assert_eq!(balance(&net, &flow, 2), -8);
        assert_eq!(validate_flow(&net, &flow).unwrap(), 8);
    }

    #[test]
    fn validate_reports_all_violations() {
        let (net, _) = two_path_net();
        // Overfull arc 0 and imbalance at vertex 1.
        let bad = Flow::new(0, 2, vec![6, 5, 3, 3]);
        let err = validate_flow(&net, &bad).unwrap_err();
        assert_eq!(err.violations.len(), 2);
        assert!(matches!(
            err.violations[0],
            FlowViolation::CapacityExceeded { arc: 0, .. }
        ));
        assert!(matches!(
            err.violations[1],
            FlowViolation::ImbalancedVertex { vertex: 1, .. }
        ));
    }

    #[test]
    fn support_thresholds_and_resets_capacities() {
        let (net, flow) = two_path_net();
        let sup = support(&net, &flow, 4);
        let caps: Vec<u64> = sup.arcs().iter().map(|a| a.capacity).collect();
        assert_eq!(caps, vec![5, 5, 0, 0]);
        // Vertex set and arc ids unchanged.
        assert_eq!(sup.vertex_count(), net.vertex_count());
        assert_eq!(sup.arc_count(), net.arc_count());
        assert_eq!(support(&net, &flow, 1).positive_arcs().count(), 4);
    }

    #[test]
    fn colour_span_keeps_matching_arcs() {
        let (net, _) = two_path_net();
        let span = colour_span(&net, 2);
        let ids: Vec<ArcId> = span.positive_arcs().map(|a| a.id).collect();
        assert_eq!(ids, vec![2, 3]);
    }

    #[test]
    fn colour_counts() {
        let (net, _) = two_path_net();
        assert_eq!(path_colour_count(&net, &[0, 1]), 1);
        assert_eq!(path_colour_count(&net, &[0, 3]), 2);
        assert_eq!(path_colour_count(&net, &[]), 0);
    }

    #[test]
    fn verify_accepts_exact_decomposition() {
        let (net, flow) = two_path_net();
        let d = Decomposition::new(
            &net,
            vec![
                PathFlow { arcs: vec![0, 1], value: 5 },
                PathFlow { arcs: vec![2, 3], value: 3 },
            ],
            vec![],
        );
        assert_eq!(d.cost, 2);
        assert_eq!(verify_decomposition(&net, &flow, &d).unwrap(), 2);
    }

    #[test]
    fn verify_rejects_wrong_sums_and_structure() {
        let (net, flow) = two_path_net();
        let short = Decomposition::new(
            &net,
            vec![PathFlow { arcs: vec![0, 1], value: 5 }],
            vec![],
        );
        assert!(matches!(
            verify_decomposition(&net, &flow, &short),
            Err(VerifyError::ArcSumMismatch { arc: 2, .. })
        ));
        // Crossing the parallel arcs swaps the per-arc sums.
        let crossed = Decomposition::new(
            &net,
            vec![
                PathFlow { arcs: vec![0, 3], value: 5 },
                PathFlow { arcs: vec![2, 1], value: 3 },
            ],
            vec![],
        );
        assert!(matches!(
            verify_decomposition(&net, &flow, &crossed),
            Err(VerifyError::ArcSumMismatch { arc: 1, .. })
        ));
        let chain = ColouredNetwork::new(
            4,
            vec![(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (0, 2, 1, 1)],
        )
        .unwrap();
        let cflow = Flow::new(0, 3, vec![1, 1, 1, 0]);
        let gap = Decomposition::new(
            &chain,
            vec![PathFlow { arcs: vec![0, 2], value: 1 }], // 0->1 then 2->3
            vec![],
        );
        assert!(matches!(
            verify_decomposition(&chain, &cflow, &gap),
            Err(VerifyError::MalformedPath { .. })
        ));
    }

    #[test]
    fn verify_checks_stated_cost() {
        let (net, flow) = two_path_net();
        let mut d = Decomposition::new(
            &net,
            vec![
                PathFlow { arcs: vec![0, 1], value: 5 },
                PathFlow { arcs: vec![2, 3], value: 3 },
            ],
            vec![],
        );
        d.cost = 1;
        assert!(matches!(
            verify_decomposition(&net, &flow, &d),
            Err(VerifyError::CostMismatch { stated: 1, computed: 2 })
        ));
    }

    #[test]
    fn acyclicity_respects_positive_capacities() {
        let cyclic =
            ColouredNetwork::new(2, vec![(0, 1, 1, 1), (1, 0, 1, 1)]).unwrap();
        assert!(!is_acyclic(&cyclic));
        let broken_cycle =
            ColouredNetwork::new(2, vec![(0, 1, 1, 1), (1, 0, 0, 1)]).unwrap();
        assert!(is_acyclic(&broken_cycle));
    }
}
