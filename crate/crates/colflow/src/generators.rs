//! Instance generators: the hardness-reduction constructions (3-Partition,
//! splittable embedding, weak 2-linkage, 1-in-3SAT), the greedy-gap chain
//! family, and the built-in example fixtures. Each generator emits the
//! instance together with a machine-checkable decision threshold.

use crate::core::{
    ColouredNetwork, Decomposition, Flow, FlowError, Instance, NetworkError, VertexId,
    positive_colour_set,
};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("need a positive multiple of 3 values, got {0}")]
    BadValueCount(usize),
    #[error("value {value} at position {index} violates T/4 < v < T/2 for T = {target}")]
    ValueOutOfRange {
        index: usize,
        value: u64,
        target: u64,
    },
    #[error("values sum to {sum}, expected r*T = {expected}")]
    SumMismatch { sum: u64, expected: u64 },
    #[error("arc {arc}: base flow value {value} is not in {{1, 2, 4}}")]
    BadBaseValue { arc: usize, value: u64 },
    #[error("base must be monochromatic, found colours {0:?}")]
    NotMonochromatic(Vec<u32>),
    #[error("q must be at least 2, got {0}")]
    BadQ(u64),
    #[error("base too small: {vertices} vertices, {arcs} arcs (need n >= 4, m >= 2)")]
    BaseTooSmall { vertices: usize, arcs: usize },
    #[error("linkage terminals u1, u2, v1, v2 must be pairwise distinct")]
    TerminalsNotDistinct,
    #[error("linkage terminal {0} lacks the required base degree")]
    TerminalDegree(VertexId),
    #[error("clause {clause}: {reason}")]
    ClauseMalformed { clause: usize, reason: String },
    #[error("need at least 3 variables, got {0}")]
    TooFewVariables(usize),
    #[error("greedy-gap family needs n >= 3, got {0}")]
    FamilyTooSmall(u64),
    #[error("lambda must be positive")]
    ZeroLambda,
    #[error("unknown fixture name {0:?}")]
    UnknownFixture(String),
}

/// Decision threshold paired with an optional witness decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub threshold: u64,
    pub witness: Option<Decomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub instance: Instance,
    pub certificate: Certificate,
    pub provenance: String,
}

fn saturated_instance(
    vertex_count: usize,
    arcs: Vec<(VertexId, VertexId, u64, u32)>,
    source: VertexId,
    sink: VertexId,
) -> Result<Instance, GenError> {
    let values: Vec<u64> = arcs.iter().map(|&(_, _, u, _)| u).collect();
    let network = ColouredNetwork::new(vertex_count, arcs)?;
    Ok(Instance::new(network, Flow::new(source, sink, values), None)?)
}

/// 3-Partition reduction. Vertices {a₁..a₃ᵣ, b₁..bᵣ, q, s, t}; every
/// value aᵢ flows s→aᵢ→q in colour r+1, every box bⱼ drains q→bⱼ→t with
/// capacity T in colour j. The flow saturates all capacities. A solution
/// of cost 6r exists iff the values admit a 3-partition into r triples
/// summing to T.
pub fn gen_3partition(values: &[u64], target: u64) -> Result<GeneratedInstance, GenError> {
    if values.is_empty() || !values.len().is_multiple_of(3) {
        return Err(GenError::BadValueCount(values.len()));
    }
    let r = values.len() / 3;
    for (index, &value) in values.iter().enumerate() {
        if 4 * value <= target || 2 * value >= target {
            return Err(GenError::ValueOutOfRange {
                index,
                value,
                target,
            });
        }
    }
    let sum: u64 = values.iter().sum();
    if sum != r as u64 * target {
        return Err(GenError::SumMismatch {
            sum,
            expected: r as u64 * target,
        });
    }
    // Vertex layout: aᵢ = i, bⱼ = 3r + j, q = 4r, s = 4r + 1, t = 4r + 2.
    let q = 4 * r;
    let s = 4 * r + 1;
    let t = 4 * r + 2;
    let left_colour = (r + 1) as u32;
    let mut arcs = Vec::with_capacity(8 * r);
    for (i, &value) in values.iter().enumerate() {
        arcs.push((s, i, value, left_colour));
        arcs.push((i, q, value, left_colour));
    }
    for j in 0..r {
        arcs.push((q, 3 * r + j, target, (j + 1) as u32));
        arcs.push((3 * r + j, t, target, (j + 1) as u32));
    }
    let instance = saturated_instance(4 * r + 3, arcs, s, t)?;
    Ok(GeneratedInstance {
        instance,
        certificate: Certificate {
            threshold: 6 * r as u64,
            witness: None,
        },
        provenance: format!("3partition r={r} T={target} values={values:?}"),
    })
}

/// Embeds a monochromatic k-splittable question into a colour-cost
/// question: q−1 fresh unit detours s→zᵢ→t, each in its own colour, are
/// added to the base. The base is k-splittable iff the result decomposes
/// with cost at most k + q − 1.
pub fn gen_from_splittable(
    base: &Instance,
    q: u64,
    k: u64,
) -> Result<GeneratedInstance, GenError> {
    if q < 2 {
        return Err(GenError::BadQ(q));
    }
    for (arc, &value) in base.flow.values.iter().enumerate() {
        if value != 0 && value != 1 && value != 2 && value != 4 {
            return Err(GenError::BadBaseValue { arc, value });
        }
    }
    let colours: Vec<u32> = positive_colour_set(&base.network, &base.flow)
        .into_iter()
        .collect();
    if colours.len() > 1 {
        return Err(GenError::NotMonochromatic(colours));
    }
    let base_colour = colours.first().copied().unwrap_or(1);
    let n = base.network.vertex_count();
    let mut arcs: Vec<(VertexId, VertexId, u64, u32)> = base
        .network
        .arcs()
        .iter()
        .map(|a| (a.tail, a.head, a.capacity, a.colour))
        .collect();
    let mut values = base.flow.values.clone();
    for i in 2..=q {
        let z = n + (i as usize) - 2;
        let colour = base_colour + (i as u32) - 1;
        arcs.push((base.flow.source, z, 1, colour));
        arcs.push((z, base.flow.sink, 1, colour));
        values.push(1);
        values.push(1);
    }
    let network = ColouredNetwork::new(n + q as usize - 1, arcs)?;
    let flow = Flow::new(base.flow.source, base.flow.sink, values);
    let instance = Instance::new(network, flow, None)?;
    Ok(GeneratedInstance {
        instance,
        certificate: Certificate {
            threshold: k + q - 1,
            witness: None,
        },
        provenance: format!("splittable q={q} k={k} base_n={n}"),
    })
}

/// A digraph with the four weak-2-linkage terminals marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkageBase {
    pub vertex_count: usize,
    pub arcs: Vec<(VertexId, VertexId)>,
    pub u1: VertexId,
    pub u2: VertexId,
    pub v1: VertexId,
    pub v2: VertexId,
}

/// Weak-2-linkage reduction on three colours. Base arcs become colour-3
/// arcs; s feeds u₁/u₂ in colours 1/2 and v₁/v₂ drain to t likewise; the
/// remaining m−2 flow units run through the s₁s₂ and t₁t₂ multipaths with
/// degree-balancing arcs (ascending base-vertex order) tying them to the
/// base. Every capacity and flow value is λ. The base admits arc-disjoint
/// u₁→v₁ and u₂→v₂ paths iff the flow decomposes with cost 3m−2.
///
/// With `degree_bounded` set, each multipath position becomes its own
/// two-arc chain through fresh split vertices, keeping all degrees at
/// most 6 whenever the base has maximum degree 3 (same arc count, n + 2 +
/// 4(m−2) vertices).
pub fn gen_weak2linkage(
    base: &LinkageBase,
    lambda: u64,
    degree_bounded: bool,
) -> Result<GeneratedInstance, GenError> {
    if lambda == 0 {
        return Err(GenError::ZeroLambda);
    }
    let (n, m) = (base.vertex_count, base.arcs.len());
    if n < 4 || m < 2 {
        return Err(GenError::BaseTooSmall {
            vertices: n,
            arcs: m,
        });
    }
    let terminals = [base.u1, base.u2, base.v1, base.v2];
    if terminals.iter().collect::<BTreeSet<_>>().len() != 4 {
        return Err(GenError::TerminalsNotDistinct);
    }
    let mut outdeg = vec![0usize; n];
    let mut indeg = vec![0usize; n];
    for &(tail, head) in &base.arcs {
        if tail >= n || head >= n {
            return Err(GenError::Network(NetworkError::VertexOutOfRange {
                index: 0,
                vertex: tail.max(head),
                vertex_count: n,
            }));
        }
        outdeg[tail] += 1;
        indeg[head] += 1;
    }
    for u in [base.u1, base.u2] {
        if outdeg[u] == 0 {
            return Err(GenError::TerminalDegree(u));
        }
    }
    for v in [base.v1, base.v2] {
        if indeg[v] == 0 {
            return Err(GenError::TerminalDegree(v));
        }
    }
    // Balancing multiplicities: every base vertex re-emits its out-degree
    // from s₂ (terminals u₁/u₂ get one unit through s directly) and
    // returns its in-degree to t₁ (v₁/v₂ return one unit through t).
    let supply: Vec<usize> = (0..n)
        .map(|v| outdeg[v] - usize::from(v == base.u1 || v == base.u2))
        .collect();
    let drain: Vec<usize> = (0..n)
        .map(|v| indeg[v] - usize::from(v == base.v1 || v == base.v2))
        .collect();
    debug_assert_eq!(supply.iter().sum::<usize>(), m - 2);
    debug_assert_eq!(drain.iter().sum::<usize>(), m - 2);
    let mut arcs: Vec<(VertexId, VertexId, u64, u32)> = Vec::with_capacity(7 * m - 8);
    let instance = if !degree_bounded {
        let (s, s1, s2, t1, t2, t) = (n, n + 1, n + 2, n + 3, n + 4, n + 5);
        for &(tail, head) in &base.arcs {
            arcs.push((tail, head, lambda, 3));
        }
        arcs.push((s, base.u1, lambda, 1));
        arcs.push((s, base.u2, lambda, 2));
        arcs.push((base.v1, t, lambda, 1));
        arcs.push((base.v2, t, lambda, 2));
        for _ in 0..m - 2 {
            arcs.push((s, s1, lambda, 1));
        }
        for _ in 0..m - 2 {
            arcs.push((s1, s2, lambda, 3));
        }
        for (v, &count) in supply.iter().enumerate() {
            for _ in 0..count {
                arcs.push((s2, v, lambda, 2));
            }
        }
        for (v, &count) in drain.iter().enumerate() {
            for _ in 0..count {
                arcs.push((v, t1, lambda, 1));
            }
        }
        for _ in 0..m - 2 {
            arcs.push((t1, t2, lambda, 3));
        }
        for _ in 0..m - 2 {
            arcs.push((t2, t, lambda, 2));
        }
        saturated_instance(n + 6, arcs, s, t)?
    } else {
        let (s, t) = (n, n + 1);
        let s_split = |i: usize| (n + 2 + 2 * i, n + 3 + 2 * i);
        let t_base = n + 2 + 2 * (m - 2);
        let t_split = |i: usize| (t_base + 2 * i, t_base + 1 + 2 * i);
        for &(tail, head) in &base.arcs {
            arcs.push((tail, head, lambda, 3));
        }
        arcs.push((s, base.u1, lambda, 1));
        arcs.push((s, base.u2, lambda, 2));
        arcs.push((base.v1, t, lambda, 1));
        arcs.push((base.v2, t, lambda, 2));
        let supply_targets: Vec<VertexId> = (0..n)
            .flat_map(|v| std::iter::repeat_n(v, supply[v]))
            .collect();
        let drain_sources: Vec<VertexId> = (0..n)
            .flat_map(|v| std::iter::repeat_n(v, drain[v]))
            .collect();
        for (i, &v) in supply_targets.iter().enumerate() {
            let (s1i, s2i) = s_split(i);
            arcs.push((s, s1i, lambda, 1));
            arcs.push((s1i, s2i, lambda, 3));
            arcs.push((s2i, v, lambda, 2));
        }
        for (i, &v) in drain_sources.iter().enumerate() {
            let (t1i, t2i) = t_split(i);
            arcs.push((v, t1i, lambda, 1));
            arcs.push((t1i, t2i, lambda, 3));
            arcs.push((t2i, t, lambda, 2));
        }
        saturated_instance(n + 2 + 4 * (m - 2), arcs, s, t)?
    };
    Ok(GeneratedInstance {
        instance,
        certificate: Certificate {
            threshold: 3 * m as u64 - 2,
            witness: None,
        },
        provenance: format!(
            "weak2linkage n={n} m={m} lambda={lambda} degree_bounded={degree_bounded}"
        ),
    })
}

/// 1-in-3SAT reduction on an acyclic network with n+2 colours. Literals
/// are nonzero integers ±v with v ≤ the number of variables (the largest
/// mentioned variable defines n). Two s-arcs per variable (colours 1 and
/// 2) feed the two literal chains (colour i+2), which thread through the
/// clause gadgets (one colour-1 arc and two colour-2 arcs each) in clause
/// order. The formula is 1-in-3 satisfiable iff the flow decomposes with
/// cost 4n.
pub fn gen_1in3sat(clauses: &[[i32; 3]], lambda: u64) -> Result<GeneratedInstance, GenError> {
    if lambda == 0 {
        return Err(GenError::ZeroLambda);
    }
    let mut n = 0usize;
    for (index, clause) in clauses.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for &literal in clause {
            if literal == 0 {
                return Err(GenError::ClauseMalformed {
                    clause: index,
                    reason: "literal 0 is not allowed".into(),
                });
            }
            if !seen.insert(literal) {
                return Err(GenError::ClauseMalformed {
                    clause: index,
                    reason: format!("literal {literal} repeated"),
                });
            }
            n = n.max(literal.unsigned_abs() as usize);
        }
    }
    if n < 3 {
        return Err(GenError::TooFewVariables(n));
    }
    let m = clauses.len();
    // Vertex layout: s = 0, t = 1, xᵢ = 1 + i, c_jˢ = n + 2 + 2j,
    // c_jᵗ = n + 3 + 2j.
    let s = 0;
    let t = 1;
    let var = |i: usize| 1 + i;
    let clause_in = |j: usize| n + 2 + 2 * j;
    let clause_out = |j: usize| n + 3 + 2 * j;
    let mut arcs: Vec<(VertexId, VertexId, u64, u32)> = Vec::with_capacity(4 * n + 6 * m);
    for i in 1..=n {
        arcs.push((s, var(i), lambda, 1));
        arcs.push((s, var(i), lambda, 2));
    }
    for j in 0..m {
        arcs.push((clause_in(j), clause_out(j), lambda, 1));
        arcs.push((clause_in(j), clause_out(j), lambda, 2));
        arcs.push((clause_in(j), clause_out(j), lambda, 2));
    }
    for i in 1..=n {
        let chain_colour = (i + 2) as u32;
        for sign in [1i32, -1] {
            let literal = sign * i as i32;
            let occurrences: Vec<usize> = (0..m)
                .filter(|&j| clauses[j].contains(&literal))
                .collect();
            let mut from = var(i);
            for &j in &occurrences {
                arcs.push((from, clause_in(j), lambda, chain_colour));
                from = clause_out(j);
            }
            arcs.push((from, t, lambda, chain_colour));
        }
    }
    debug_assert_eq!(arcs.len(), 4 * n + 6 * m);
    let instance = saturated_instance(n + 2 * m + 2, arcs, s, t)?;
    Ok(GeneratedInstance {
        instance,
        certificate: Certificate {
            threshold: 4 * n as u64,
            witness: None,
        },
        provenance: format!("1in3sat n={n} m={m} lambda={lambda} clauses={clauses:?}"),
    })
}

fn greedy_gap_network(n: u64) -> (usize, Vec<(VertexId, VertexId, u64, u32)>) {
    let n = n as usize;
    let t = 2 * n + 1;
    let mut arcs = Vec::with_capacity(6 * n + 1);
    // Spine s → v₁ → ... → v₂ₙ → t at value 4.
    for v in 0..=2 * n {
        let head = if v == 2 * n { t } else { v + 1 };
        arcs.push((v, head, 4, 1));
    }
    // Shortcuts into the odd and out of the even chain vertices at 2.
    for i in 1..=n {
        arcs.push((0, 2 * i - 1, 2, 1));
        arcs.push((2 * i, t, 2, 1));
    }
    // Two parallel unit arcs across each odd-even pair.
    for i in 1..=n {
        arcs.push((2 * i - 1, 2 * i, 1, 1));
        arcs.push((2 * i - 1, 2 * i, 1, 1));
    }
    (2 * n + 2, arcs)
}

/// The monochromatic chain family generalizing the values-{1,2,4} example:
/// greedy maximum-bottleneck extraction produces 2n+1 paths while n+3
/// suffice. Valid from n = 3 up (below that the two counts coincide or
/// cross).
pub fn gen_greedy_gap(n: u64) -> Result<GeneratedInstance, GenError> {
    if n < 3 {
        return Err(GenError::FamilyTooSmall(n));
    }
    let (vertex_count, arcs) = greedy_gap_network(n);
    let sink = vertex_count - 1;
    let instance = saturated_instance(vertex_count, arcs, 0, sink)?;
    Ok(GeneratedInstance {
        instance,
        certificate: Certificate {
            threshold: n + 3,
            witness: None,
        },
        provenance: format!("greedy-gap n={n} greedy={}", 2 * n + 1),
    })
}

/// Built-in example instances, transcribed arc by arc.
pub fn fixture(name: &str) -> Result<Instance, GenError> {
    match name {
        "fig1" => {
            // s a b c d t with a 4-cycle a→b→c→d→a woven between two routes.
            let (s, a, b, c, d, t) = (0, 1, 2, 3, 4, 5);
            saturated_instance(
                6,
                vec![
                    (s, a, 1, 1),
                    (s, c, 1, 2),
                    (a, b, 1, 1),
                    (a, t, 1, 2),
                    (b, c, 1, 1),
                    (c, d, 1, 2),
                    (c, t, 1, 1),
                    (d, a, 1, 2),
                ],
                s,
                t,
            )
        }
        "fig3" => {
            let mut arcs = vec![(0, 1, 7, 1); 5];
            arcs.extend(vec![(1, 2, 5, 1); 7]);
            saturated_instance(3, arcs, 0, 2)
        }
        "fig4" => {
            let (vertex_count, arcs) = greedy_gap_network(3);
            saturated_instance(vertex_count, arcs, 0, vertex_count - 1)
        }
        "fig5" => {
            let (s, a, b, c, d, e, f, t) = (0, 1, 2, 3, 4, 5, 6, 7);
            saturated_instance(
                8,
                vec![
                    (s, c, 2, 2),
                    (s, d, 2, 1),
                    (c, d, 2, 2),
                    (c, t, 2, 1),
                    (d, t, 2, 2),
                    (s, a, 1, 2),
                    (s, b, 1, 2),
                    (a, c, 1, 2),
                    (b, c, 1, 2),
                    (d, e, 1, 2),
                    (d, f, 1, 2),
                    (e, t, 1, 2),
                    (f, t, 1, 2),
                ],
                s,
                t,
            )
        }
        "fig6" => {
            // The fig4 chain with the spine in colour 1 and everything
            // else in colour 2.
            let (vertex_count, mut arcs) = greedy_gap_network(3);
            for (index, arc) in arcs.iter_mut().enumerate() {
                arc.3 = if index <= 6 { 1 } else { 2 };
            }
            saturated_instance(vertex_count, arcs, 0, vertex_count - 1)
        }
        "fig8" => {
            let (s, a, b, c, d, e, f, g, h, t) = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9);
            saturated_instance(
                10,
                vec![
                    (s, a, 1, 3),
                    (s, b, 1, 1),
                    (a, c, 1, 2),
                    (b, c, 1, 2),
                    (c, d, 1, 3),
                    (c, e, 1, 2),
                    (d, f, 1, 3),
                    (e, f, 1, 2),
                    (f, g, 1, 2),
                    (f, h, 1, 1),
                    (g, t, 1, 2),
                    (h, t, 1, 1),
                ],
                s,
                t,
            )
        }
        other => Err(GenError::UnknownFixture(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{is_acyclic, validate_flow};

    #[test]
    fn three_partition_sizes_and_validity() {
        let g = gen_3partition(&[4, 5, 6, 4, 5, 6], 15).unwrap();
        assert_eq!(g.instance.network.vertex_count(), 4 * 2 + 3);
        assert_eq!(g.instance.network.arc_count(), 8 * 2);
        assert_eq!(g.certificate.threshold, 12);
        assert_eq!(g.instance.flow_value(), 30);
    }

    #[test]
    fn three_partition_rejects_bad_ranges() {
        // v = T/4 and v = T/2 both violate the strict window.
        assert!(matches!(
            gen_3partition(&[3, 4, 5, 3, 4, 5], 12),
            Err(GenError::ValueOutOfRange { value: 3, .. })
        ));
        assert!(matches!(
            gen_3partition(&[6, 4, 5, 4, 5, 6], 12),
            Err(GenError::ValueOutOfRange { value: 6, .. })
        ));
        assert!(matches!(
            gen_3partition(&[4, 5, 6, 4, 5, 7], 15),
            Err(GenError::SumMismatch { .. })
        ));
        assert!(matches!(
            gen_3partition(&[4, 5], 15),
            Err(GenError::BadValueCount(2))
        ));
        // The window is evaluated in exact arithmetic: 9/4 < 3 < 9/2.
        assert!(gen_3partition(&[3, 3, 3, 3, 3, 3], 9).is_ok());
    }

    #[test]
    fn splittable_embedding_sizes() {
        let base = fixture("fig4").unwrap();
        let n = base.network.vertex_count();
        let m = base.network.arc_count();
        let g = gen_from_splittable(&base, 3, 6).unwrap();
        assert_eq!(g.instance.network.vertex_count(), n + 2);
        assert_eq!(g.instance.network.arc_count(), m + 4);
        assert_eq!(g.certificate.threshold, 8);
        assert_eq!(positive_colour_set(&g.instance.network, &g.instance.flow).len(), 3);
    }

    #[test]
    fn splittable_rejects_coloured_or_bad_bases() {
        let coloured = fixture("fig1").unwrap();
        assert!(matches!(
            gen_from_splittable(&coloured, 2, 2),
            Err(GenError::NotMonochromatic(_))
        ));
        let wide = fixture("fig3").unwrap();
        assert!(matches!(
            gen_from_splittable(&wide, 2, 2),
            Err(GenError::BadBaseValue { .. })
        ));
        let ok = fixture("fig4").unwrap();
        assert!(matches!(
            gen_from_splittable(&ok, 1, 2),
            Err(GenError::BadQ(1))
        ));
    }

    fn tiny_linkage_base() -> LinkageBase {
        // u1=0, u2=1, v1=2, v2=3 plus a relay vertex 4.
        LinkageBase {
            vertex_count: 5,
            arcs: vec![(0, 2), (1, 4), (4, 3), (2, 1)],
            u1: 0,
            u2: 1,
            v1: 2,
            v2: 3,
        }
    }

    #[test]
    fn weak2linkage_sizes_both_variants() {
        let base = tiny_linkage_base();
        let m = base.arcs.len();
        let g = gen_weak2linkage(&base, 1, false).unwrap();
        assert_eq!(g.instance.network.vertex_count(), base.vertex_count + 6);
        assert_eq!(g.instance.network.arc_count(), 7 * m - 8);
        assert_eq!(g.certificate.threshold, 3 * m as u64 - 2);
        assert_eq!(g.instance.flow_value(), m as u64);
        let db = gen_weak2linkage(&base, 2, true).unwrap();
        assert_eq!(
            db.instance.network.vertex_count(),
            base.vertex_count + 2 + 4 * (m - 2)
        );
        assert_eq!(db.instance.network.arc_count(), 7 * m - 8);
        assert_eq!(db.instance.flow_value(), 2 * m as u64);
    }

    #[test]
    fn weak2linkage_rejects_degenerate_bases() {
        let mut base = tiny_linkage_base();
        base.arcs = vec![(0, 2)];
        assert!(matches!(
            gen_weak2linkage(&base, 1, false),
            Err(GenError::BaseTooSmall { .. })
        ));
        let mut no_out = tiny_linkage_base();
        no_out.arcs = vec![(0, 2), (4, 3), (2, 1), (3, 0)];
        assert!(matches!(
            gen_weak2linkage(&no_out, 1, false),
            Err(GenError::TerminalDegree(1))
        ));
    }

    #[test]
    fn one_in_three_sat_sizes_and_shape() {
        // The two-clause example over three variables.
        let g = gen_1in3sat(&[[1, 2, 3], [1, -2, -3]], 1).unwrap();
        let (n, m) = (3, 2);
        assert_eq!(g.instance.network.vertex_count(), n + 2 * m + 2);
        assert_eq!(g.instance.network.arc_count(), 4 * n + 6 * m);
        assert_eq!(g.certificate.threshold, 4 * n as u64);
        assert!(is_acyclic(&g.instance.network));
        assert_eq!(
            positive_colour_set(&g.instance.network, &g.instance.flow).len(),
            n + 2
        );
        // Non-terminal degrees are 4 (variables) or 6 (clause gadgets).
        for v in 2..g.instance.network.vertex_count() {
            let deg = g
                .instance
                .network
                .arcs()
                .iter()
                .filter(|a| a.tail == v || a.head == v)
                .count();
            assert!(deg == 4 || deg == 6, "vertex {v} has degree {deg}");
        }
    }

    #[test]
    fn one_in_three_sat_rejects_malformed_clauses() {
        assert!(matches!(
            gen_1in3sat(&[[1, 2, 0]], 1),
            Err(GenError::ClauseMalformed { .. })
        ));
        assert!(matches!(
            gen_1in3sat(&[[1, 1, 2]], 1),
            Err(GenError::ClauseMalformed { .. })
        ));
        assert!(matches!(
            gen_1in3sat(&[[1, -1, 2]], 1),
            Err(GenError::TooFewVariables(2))
        ));
    }

    #[test]
    fn greedy_gap_matches_fixture_at_three() {
        let g = gen_greedy_gap(3).unwrap();
        let f = fixture("fig4").unwrap();
        assert_eq!(g.instance, f);
        assert!(matches!(gen_greedy_gap(2), Err(GenError::FamilyTooSmall(2))));
    }

    #[test]
    fn fixtures_are_valid_and_sized() {
        for (name, vertices, arcs, value) in [
            ("fig1", 6, 8, 2),
            ("fig3", 3, 12, 35),
            ("fig4", 8, 19, 10),
            ("fig5", 8, 13, 6),
            ("fig6", 8, 19, 10),
            ("fig8", 10, 12, 2),
        ] {
            let inst = fixture(name).unwrap();
            assert_eq!(inst.network.vertex_count(), vertices, "{name}");
            assert_eq!(inst.network.arc_count(), arcs, "{name}");
            assert_eq!(
                validate_flow(&inst.network, &inst.flow).unwrap(),
                value,
                "{name}"
            );
        }
        assert!(!is_acyclic(&fixture("fig1").unwrap().network));
        assert!(is_acyclic(&fixture("fig8").unwrap().network));
        assert!(matches!(
            fixture("fig2"),
            Err(GenError::UnknownFixture(_))
        ));
    }
}
