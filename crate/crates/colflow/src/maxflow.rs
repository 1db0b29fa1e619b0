//! Maximum flow on coloured networks: plain Edmonds-Karp and a variant
//! whose arc values are multiples of a given lambda.
//!
//! Augmenting paths are shortest (BFS) with ties broken by ascending arc
//! id, so results are deterministic for a given network.

use crate::core::{ColouredNetwork, Flow, VertexId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlowResult {
    pub flow: Flow,
    pub value: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaxFlowError {
    #[error("source equals sink ({0})")]
    SourceEqualsSink(VertexId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("lambda must be positive")]
    ZeroLambda,
    #[error("arc {arc}: capacity {capacity} is not a multiple of {lambda}")]
    NotAMultiple { arc: usize, capacity: u64, lambda: u64 },
}

fn check_terminals(
    network: &ColouredNetwork,
    source: VertexId,
    sink: VertexId,
) -> Result<(), MaxFlowError> {
    for v in [source, sink] {
        if v >= network.vertex_count() {
            return Err(MaxFlowError::VertexOutOfRange(v));
        }
    }
    if source == sink {
        return Err(MaxFlowError::SourceEqualsSink(source));
    }
    Ok(())
}

/// Edmonds-Karp. Returns a maximum (source, sink)-flow; arc values are
/// deterministic for a given network.
pub fn max_flow(
    network: &ColouredNetwork,
    source: VertexId,
    sink: VertexId,
) -> Result<MaxFlowResult, MaxFlowError> {
    check_terminals(network, source, sink)?;
    let n = network.vertex_count();
    let arcs = network.arcs();
    let mut values = vec![0u64; arcs.len()];
    let mut value = 0u64;
    loop {
        // BFS over the residual network. parent[v] = (arc id, forward?).
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut visited = vec![false; n];
        visited[source] = true;
        let mut queue = std::collections::VecDeque::from([source]);
        'bfs: while let Some(v) = queue.pop_front() {
            for (id, arc) in arcs.iter().enumerate() {
                if arc.tail == v && values[id] < arc.capacity && !visited[arc.head] {
                    visited[arc.head] = true;
                    parent[arc.head] = Some((id, true));
                    if arc.head == sink {
                        break 'bfs;
                    }
                    queue.push_back(arc.head);
                }
                if arc.head == v && values[id] > 0 && !visited[arc.tail] {
                    visited[arc.tail] = true;
                    parent[arc.tail] = Some((id, false));
                    if arc.tail == sink {
                        break 'bfs;
                    }
                    queue.push_back(arc.tail);
                }
            }
        }
        if !visited[sink] {
            break;
        }
        let mut bottleneck = u64::MAX;
        let mut v = sink;
        while v != source {
            let (id, forward) = parent[v].unwrap();
            let residual = if forward {
                arcs[id].capacity - values[id]
            } else {
                values[id]
            };
            bottleneck = bottleneck.min(residual);
            v = if forward { arcs[id].tail } else { arcs[id].head };
        }
        let mut v = sink;
        while v != source {
            let (id, forward) = parent[v].unwrap();
            if forward {
                values[id] += bottleneck;
                v = arcs[id].tail;
            } else {
                values[id] -= bottleneck;
                v = arcs[id].head;
            }
        }
        value += bottleneck;
    }
    Ok(MaxFlowResult {
        flow: Flow::new(source, sink, values),
        value,
    })
}

/// Maximum flow whose every arc value is a multiple of `lambda`.
/// Capacities must themselves be multiples of `lambda` (zero included);
/// the computation runs on the scaled network and rescales the result.
pub fn max_flow_value_multiple(
    network: &ColouredNetwork,
    source: VertexId,
    sink: VertexId,
    lambda: u64,
) -> Result<MaxFlowResult, MaxFlowError> {
    check_terminals(network, source, sink)?;
    if lambda == 0 {
        return Err(MaxFlowError::ZeroLambda);
    }
    let mut scaled = Vec::with_capacity(network.arc_count());
    for arc in network.arcs() {
        if arc.capacity % lambda != 0 {
            return Err(MaxFlowError::NotAMultiple {
                arc: arc.id,
                capacity: arc.capacity,
                lambda,
            });
        }
        scaled.push(arc.capacity / lambda);
    }
    let scaled_net = network.with_capacities(&scaled);
    let mut result = max_flow(&scaled_net, source, sink)?;
    for x in &mut result.flow.values {
        *x *= lambda;
    }
    result.value *= lambda;
    Ok(result)
}

/// Maximum lambda-multiple flow capped at `cap` (itself a multiple of
/// lambda): computed on an extended network with a super-source wired to
/// `source` through a single arc of capacity `cap`. The returned flow
/// lives on the original arc ids and has value min(cap, max flow).
pub(crate) fn max_flow_capped_multiple(
    network: &ColouredNetwork,
    source: VertexId,
    sink: VertexId,
    lambda: u64,
    cap: u64,
) -> Result<MaxFlowResult, MaxFlowError> {
    check_terminals(network, source, sink)?;
    debug_assert!(lambda > 0 && cap.is_multiple_of(lambda));
    let n = network.vertex_count();
    let mut arcs: Vec<(VertexId, VertexId, u64, u32)> = network
        .arcs()
        .iter()
        .map(|a| (a.tail, a.head, a.capacity, a.colour))
        .collect();
    arcs.push((n, source, cap, 1));
    let extended = ColouredNetwork::new(n + 1, arcs).expect("extension preserves validity");
    let mut result = max_flow_value_multiple(&extended, n, sink, lambda)?;
    result.flow.values.pop();
    result.flow.source = source;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::validate_flow;

    #[test]
    fn saturates_parallel_bundles() {
        // 5 parallel arcs of capacity 7 into 7 parallel arcs of capacity 5.
        let mut arcs = vec![(0usize, 1usize, 7u64, 1u32); 5];
        arcs.extend(vec![(1, 2, 5, 1); 7]);
        let net = ColouredNetwork::new(3, arcs).unwrap();
        let r = max_flow(&net, 0, 2).unwrap();
        assert_eq!(r.value, 35);
        assert_eq!(validate_flow(&net, &r.flow).unwrap(), 35);
    }

    #[test]
    fn respects_bottleneck() {
        let net = ColouredNetwork::new(
            4,
            vec![(0, 1, 10, 1), (1, 2, 3, 1), (1, 3, 4, 1), (2, 3, 10, 1)],
        )
        .unwrap();
        let r = max_flow(&net, 0, 3).unwrap();
        assert_eq!(r.value, 7);
    }

    #[test]
    fn multiple_variant_scales() {
        let net = ColouredNetwork::new(
            3,
            vec![(0, 1, 15, 1), (0, 1, 5, 1), (1, 2, 10, 1)],
        )
        .unwrap();
        let r = max_flow_value_multiple(&net, 0, 2, 5).unwrap();
        assert_eq!(r.value, 10);
        assert!(r.flow.values.iter().all(|x| x % 5 == 0));
    }

    #[test]
    fn multiple_variant_rejects_nondivisible_capacity() {
        let net = ColouredNetwork::new(2, vec![(0, 1, 7, 1)]).unwrap();
        let err = max_flow_value_multiple(&net, 0, 1, 5).unwrap_err();
        assert!(matches!(err, MaxFlowError::NotAMultiple { arc: 0, .. }));
    }

    #[test]
    fn capped_variant_limits_value() {
        let net = ColouredNetwork::new(2, vec![(0, 1, 9, 1)]).unwrap();
        let r = max_flow_capped_multiple(&net, 0, 1, 3, 6).unwrap();
        assert_eq!(r.value, 6);
        assert_eq!(r.flow.values, vec![6]);
        assert_eq!(r.flow.source, 0);
    }

    #[test]
    fn rejects_equal_terminals() {
        let net = ColouredNetwork::new(2, vec![(0, 1, 1, 1)]).unwrap();
        assert!(matches!(
            max_flow(&net, 1, 1),
            Err(MaxFlowError::SourceEqualsSink(1))
        ));
    }
}
