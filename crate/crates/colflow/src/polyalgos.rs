//! Polynomial-time special-case solvers: uniform flows, two-value flows
//! (the Euclid-style trace algorithm), and the bichromatic uniform /
//! divisible minimum-colour-cost constructions.

use crate::core::{
    ArcId, ColouredNetwork, CycleFlow, Decomposition, Flow, FlowError, PathFlow, is_acyclic,
    positive_colour_set, validate_flow,
};
use crate::decompose::{extract_cycles, find_path, peel_paths_multiple, subtract_along};
use crate::maxflow::{max_flow_capped_multiple, max_flow_value_multiple};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("lambda must be positive")]
    ZeroLambda,
    #[error("arc {arc}: flow value {value} is not in {{0, {lambda}}}")]
    NotUniform { arc: ArcId, value: u64, lambda: u64 },
    #[error("arc {arc}: flow value {value} is not in {{{a}, {b}}}")]
    ValueOutsidePair { arc: ArcId, value: u64, a: u64, b: u64 },
    #[error("invalid value pair a = {a}, b = {b}: need a >= b >= 1")]
    BadValuePair { a: u64, b: u64 },
    #[error("{b} does not divide {a}")]
    NotDivisible { a: u64, b: u64 },
    #[error("more than two colours carry flow: {0:?}")]
    TooManyColours(Vec<u32>),
    #[error("colour {colour} carries values {values:?}; expected exactly one of {v1} or {v2}")]
    ColourValueMismatch {
        colour: u32,
        values: Vec<u64>,
        v1: u64,
        v2: u64,
    },
    #[error("colours {0} and {1} both carry value {2}: no colour-value correspondence")]
    AmbiguousColourValue(u32, u32, u64),
}

/// Trace of the two-value decomposition algorithm: per-iteration path
/// counts `p`, the working values `a_sequence` (strictly decreasing, the
/// Euclid remainder chain of the input pair), and the concrete components
/// produced. The circulation holds whatever the paths do not cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoValueTrace {
    pub p: Vec<u64>,
    pub a_sequence: Vec<u64>,
    pub paths: Vec<PathFlow>,
    pub circulation: Vec<CycleFlow>,
}

impl TwoValueTrace {
    pub fn total_paths(&self) -> u64 {
        self.p.iter().sum()
    }

    pub fn into_decomposition(self, network: &ColouredNetwork) -> Decomposition {
        Decomposition::new(network, self.paths, self.circulation)
    }
}

/// Result of the bichromatic constructions: `p` total paths, split into
/// `p1`/`p2` monochromatic paths (first/second colour) and `p12`
/// two-coloured paths, with cost p1 + p2 + 2·p12.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BichromaticUniformResult {
    pub p: u64,
    pub p1: u64,
    pub p2: u64,
    pub p12: u64,
    pub cost: u64,
    pub decomposition: Decomposition,
}

fn check_uniform(flow: &Flow, lambda: u64) -> Result<(), PolyError> {
    if lambda == 0 {
        return Err(PolyError::ZeroLambda);
    }
    for (arc, &value) in flow.values.iter().enumerate() {
        if value != 0 && value != lambda {
            return Err(PolyError::NotUniform { arc, value, lambda });
        }
    }
    Ok(())
}

fn check_value_pair(flow: &Flow, a: u64, b: u64) -> Result<(), PolyError> {
    if b == 0 || a < b {
        return Err(PolyError::BadValuePair { a, b });
    }
    for (arc, &value) in flow.values.iter().enumerate() {
        if value != 0 && value != a && value != b {
            return Err(PolyError::ValueOutsidePair { arc, value, a, b });
        }
    }
    Ok(())
}

/// Peels `amount / step` paths of value `step` straight out of `values`
/// (every positive arc must stay a nonnegative multiple-of-`step` margin,
/// which all callers guarantee).
fn peel_master(
    network: &ColouredNetwork,
    values: &mut [u64],
    flow: &Flow,
    step: u64,
    amount: u64,
) -> Vec<PathFlow> {
    debug_assert!(step > 0 && amount.is_multiple_of(step));
    let mut paths = Vec::new();
    let mut remaining = amount;
    while remaining > 0 {
        let arcs = find_path(network, values, flow.source, flow.sink, 1)
            .expect("a positive-value flow contains a source-sink path");
        subtract_along(values, &arcs, step);
        paths.push(PathFlow { arcs, value: step });
        remaining -= step;
    }
    paths
}

/// Decomposes a λ-uniform flow into exactly |x|/λ arc-disjoint path flows
/// of value λ, plus the leftover circulation.
pub fn decompose_uniform(
    network: &ColouredNetwork,
    flow: &Flow,
    lambda: u64,
) -> Result<Decomposition, PolyError> {
    check_uniform(flow, lambda)?;
    let total = validate_flow(network, flow)?;
    debug_assert_eq!(total % lambda, 0);
    let mut values = flow.values.clone();
    let paths = peel_master(network, &mut values, flow, lambda, total);
    // Uniform values land on 0 after one use, so the paths are arc-disjoint.
    debug_assert!({
        let mut used = BTreeSet::new();
        paths.iter().flat_map(|p| &p.arcs).all(|&id| used.insert(id))
    });
    let circulation = extract_cycles(network, &mut values);
    Ok(Decomposition::new(network, paths, circulation))
}

/// Capacity vector for one working iteration: arcs at or above the
/// threshold keep their value rounded down to a multiple of it.
fn rounded_support_caps(values: &[u64], threshold: u64) -> Vec<u64> {
    values
        .iter()
        .map(|&x| if x >= threshold { (x / threshold) * threshold } else { 0 })
        .collect()
}

/// The two-value decomposition algorithm. Repeatedly takes a maximum flow
/// whose arc values are multiples of the working value `a` inside the
/// support network (capacities rounded down to multiples of `a`), records
/// the path count, subtracts, and steps the pair (a, b) by Euclid's rule;
/// one final unrounded round runs at the terminal value. Returns the full
/// trace with concrete paths; the remaining circulation is peeled last.
pub fn flow_decomposition_2v(
    network: &ColouredNetwork,
    flow: &Flow,
    a: u64,
    b: u64,
) -> Result<TwoValueTrace, PolyError> {
    check_value_pair(flow, a, b)?;
    let mut remaining = validate_flow(network, flow)?;
    let acyclic = is_acyclic(network);
    let mut values = flow.values.clone();
    let mut p = Vec::new();
    let mut a_sequence = Vec::new();
    let mut paths = Vec::new();
    let (mut cur_a, mut cur_b) = (a, b);
    let extract = |working: u64,
                   caps: Vec<u64>,
                   cap: u64,
                   values: &mut Vec<u64>,
                   paths: &mut Vec<PathFlow>|
     -> u64 {
        let sub = network.with_capacities(&caps);
        let result = max_flow_capped_multiple(&sub, flow.source, flow.sink, working, cap)
            .expect("working capacities are multiples of the working value");
        let mut y = result.flow.values;
        paths.extend(peel_paths_multiple(
            network,
            values,
            &mut y,
            flow.source,
            flow.sink,
            working,
        ));
        result.value
    };
    while cur_b > 0 {
        a_sequence.push(cur_a);
        let caps = rounded_support_caps(&values, cur_a);
        let cap = (remaining / cur_a) * cur_a;
        let got = extract(cur_a, caps, cap, &mut values, &mut paths);
        p.push(got / cur_a);
        remaining -= got;
        let r = cur_a % cur_b;
        cur_a = cur_b;
        cur_b = r;
        if acyclic {
            // At most two distinct residual values remain, drawn from the
            // current working pair.
            let distinct: BTreeSet<u64> = values.iter().copied().filter(|&x| x > 0).collect();
            assert!(
                distinct.iter().all(|&x| x == *a_sequence.last().unwrap() || x == cur_a),
                "residual values {distinct:?} escape the working pair"
            );
        }
    }
    // Terminal round at gcd(a, b), skipped in the degenerate a = b case
    // where the loop already worked at this value.
    if a_sequence.last() != Some(&cur_a) {
        a_sequence.push(cur_a);
        let caps: Vec<u64> = values.iter().map(|&x| if x >= cur_a { x } else { 0 }).collect();
        let got = extract(cur_a, caps, remaining, &mut values, &mut paths);
        p.push(got / cur_a);
        remaining -= got;
    }
    debug_assert_eq!(remaining, 0, "the terminal round drains the flow value");
    debug_assert!(a_sequence.windows(2).all(|w| w[0] > w[1]));
    let iteration_bound = 2 * ((64 - a.leading_zeros()) + (64 - b.leading_zeros())) as usize + 2;
    debug_assert!(a_sequence.len() <= iteration_bound);
    let circulation = extract_cycles(network, &mut values);
    Ok(TwoValueTrace {
        p,
        a_sequence,
        paths,
        circulation,
    })
}

/// Minimum-cardinality decomposition of a two-value flow whose smaller
/// value divides the larger: p₁ value-`a` paths from the support max
/// flow, then p₂ value-`b` paths from the remainder.
pub fn decompose_two_values_divisible(
    network: &ColouredNetwork,
    flow: &Flow,
    a: u64,
    b: u64,
) -> Result<Decomposition, PolyError> {
    check_value_pair(flow, a, b)?;
    if !a.is_multiple_of(b) {
        return Err(PolyError::NotDivisible { a, b });
    }
    let trace = flow_decomposition_2v(network, flow, a, b)?;
    debug_assert!(trace.p.len() <= 2);
    Ok(trace.into_decomposition(network))
}

/// Buckets paths into monochromatic-first-colour, monochromatic-second-
/// colour, and genuinely two-coloured.
fn classify_paths(
    network: &ColouredNetwork,
    paths: &[PathFlow],
    c1: Option<u32>,
    c2: Option<u32>,
) -> (u64, u64, u64) {
    let (mut p1, mut p2, mut p12) = (0, 0, 0);
    for path in paths {
        let colours: BTreeSet<u32> = path.arcs.iter().map(|&id| network.arc(id).colour).collect();
        debug_assert!(!colours.is_empty());
        if colours.len() >= 2 {
            p12 += 1;
        } else if Some(*colours.iter().next().unwrap()) == c1 {
            p1 += 1;
        } else {
            debug_assert_eq!(Some(*colours.iter().next().unwrap()), c2);
            p2 += 1;
        }
    }
    (p1, p2, p12)
}

fn assemble_bichromatic(
    network: &ColouredNetwork,
    paths: Vec<PathFlow>,
    circulation: Vec<CycleFlow>,
    c1: Option<u32>,
    c2: Option<u32>,
) -> BichromaticUniformResult {
    let (p1, p2, p12) = classify_paths(network, &paths, c1, c2);
    let p = paths.len() as u64;
    debug_assert_eq!(p12, p - p1 - p2);
    let decomposition = Decomposition::new(network, paths, circulation);
    let cost = p1 + p2 + 2 * p12;
    debug_assert_eq!(cost, decomposition.cost);
    BichromaticUniformResult {
        p,
        p1,
        p2,
        p12,
        cost,
        decomposition,
    }
}

/// Capacity vector that keeps the flow values of one colour's arcs.
fn colour_support_caps(network: &ColouredNetwork, flow: &Flow, colour: u32) -> Vec<u64> {
    network
        .arcs()
        .iter()
        .zip(&flow.values)
        .map(|(arc, &x)| if arc.colour == colour { x } else { 0 })
        .collect()
}

/// Minimum colour cost decomposition of a λ-uniform flow on a network
/// with at most two colours carrying flow. Saturates monochromatic paths
/// colour by colour via capped maximum λ-multiple flows on the per-colour
/// subnetworks; everything left over peels into two-coloured paths.
pub fn mincost_bichromatic_uniform(
    network: &ColouredNetwork,
    flow: &Flow,
    lambda: u64,
) -> Result<BichromaticUniformResult, PolyError> {
    check_uniform(flow, lambda)?;
    let total = validate_flow(network, flow)?;
    let colours: Vec<u32> = positive_colour_set(network, flow).into_iter().collect();
    if colours.len() > 2 {
        return Err(PolyError::TooManyColours(colours));
    }
    let mut values = flow.values.clone();
    let mut paths = Vec::new();
    let mut extracted = 0u64;
    for &colour in &colours {
        let caps = colour_support_caps(network, flow, colour);
        let sub = network.with_capacities(&caps);
        let result =
            max_flow_capped_multiple(&sub, flow.source, flow.sink, lambda, total - extracted)
                .expect("uniform values are multiples of lambda");
        let mut y = result.flow.values;
        paths.extend(peel_paths_multiple(
            network,
            &mut values,
            &mut y,
            flow.source,
            flow.sink,
            lambda,
        ));
        extracted += result.value;
    }
    paths.extend(peel_master(network, &mut values, flow, lambda, total - extracted));
    let circulation = extract_cycles(network, &mut values);
    Ok(assemble_bichromatic(
        network,
        paths,
        circulation,
        colours.first().copied(),
        colours.get(1).copied(),
    ))
}

/// Determines which colour carries which value under the divisible
/// correspondence precondition.
fn colour_value_roles(
    network: &ColouredNetwork,
    flow: &Flow,
    v1: u64,
    v2: u64,
) -> Result<(Option<u32>, Option<u32>), PolyError> {
    let colours: Vec<u32> = positive_colour_set(network, flow).into_iter().collect();
    if colours.len() > 2 {
        return Err(PolyError::TooManyColours(colours));
    }
    let mut role = Vec::new();
    for &colour in &colours {
        let carried: BTreeSet<u64> = network
            .arcs()
            .iter()
            .zip(&flow.values)
            .filter(|(arc, &x)| arc.colour == colour && x > 0)
            .map(|(_, &x)| x)
            .collect();
        let values: Vec<u64> = carried.iter().copied().collect();
        if values.len() != 1 || (values[0] != v1 && values[0] != v2) {
            return Err(PolyError::ColourValueMismatch {
                colour,
                values,
                v1,
                v2,
            });
        }
        role.push((colour, values[0]));
    }
    if let [(ca, xa), (cb, xb)] = role[..] {
        if xa == xb {
            return Err(PolyError::AmbiguousColourValue(ca, cb, xa));
        }
    }
    let c1 = role.iter().find(|&&(_, v)| v == v1).map(|&(c, _)| c);
    let c2 = role.iter().find(|&&(_, v)| v == v2).map(|&(c, _)| c);
    Ok((c1, c2))
}

/// Minimum colour cost decomposition when one colour carries value v₁,
/// the other v₂, and v₂ divides v₁: equivalent to the v₂-uniform
/// expansion of the colour-1 arcs followed by the uniform construction,
/// with the expanded colour-1 lanes regrouped into value-v₁ paths. The
/// colour-1 monochromatic mass is capped by the flow value, which a
/// terminal-spanning colour-1 cycle can push below the colour-1 maximum
/// flow; the cap need not sit on the v₁ grid, so the last kept colour-1
/// path may carry less than v₁.
pub fn mincost_bichromatic_divisible(
    network: &ColouredNetwork,
    flow: &Flow,
    v1: u64,
    v2: u64,
) -> Result<BichromaticUniformResult, PolyError> {
    if v2 == 0 || v1 < v2 {
        return Err(PolyError::BadValuePair { a: v1, b: v2 });
    }
    if !v1.is_multiple_of(v2) {
        return Err(PolyError::NotDivisible { a: v1, b: v2 });
    }
    if v1 == v2 {
        return mincost_bichromatic_uniform(network, flow, v1);
    }
    let total = validate_flow(network, flow)?;
    let (c1, c2) = colour_value_roles(network, flow, v1, v2)?;
    let mut values = flow.values.clone();
    let mut paths = Vec::new();
    let mut extracted = 0u64;
    if let Some(colour) = c1 {
        // Every colour-1 arc carries exactly v1, so the colour-1 max flow
        // is v1-granular and peels into value-v1 paths. Trimmed mass goes
        // back into the master flow for the circulation.
        let caps = colour_support_caps(network, flow, colour);
        let sub = network.with_capacities(&caps);
        let result = max_flow_value_multiple(&sub, flow.source, flow.sink, v1)
            .expect("colour-1 support values are multiples of v1");
        let budget = result.value.min(total);
        let mut y = result.flow.values;
        let full = peel_paths_multiple(network, &mut values, &mut y, flow.source, flow.sink, v1);
        for mut path in full {
            let keep = path.value.min(budget - extracted);
            let trim = path.value - keep;
            if trim > 0 {
                for &id in &path.arcs {
                    values[id] += trim;
                }
            }
            if keep == 0 {
                continue;
            }
            path.value = keep;
            extracted += keep;
            paths.push(path);
        }
        debug_assert_eq!(extracted, budget);
    }
    if let Some(colour) = c2 {
        let caps = colour_support_caps(network, flow, colour);
        let sub = network.with_capacities(&caps);
        let result = max_flow_capped_multiple(&sub, flow.source, flow.sink, v2, total - extracted)
            .expect("colour-2 support values are multiples of v2");
        let mut y = result.flow.values;
        paths.extend(peel_paths_multiple(
            network,
            &mut values,
            &mut y,
            flow.source,
            flow.sink,
            v2,
        ));
        extracted += result.value;
    }
    paths.extend(peel_master(network, &mut values, flow, v2, total - extracted));
    let circulation = extract_cycles(network, &mut values);
    Ok(assemble_bichromatic(network, paths, circulation, c1, c2))
}
