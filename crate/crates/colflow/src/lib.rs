//! Decomposing flows on arc-coloured networks into paths of small total
//! colour cost.
//!
//! A flow on a directed network whose arcs carry colours decomposes into
//! source-sink paths and a circulation; each path is charged the number
//! of distinct colours it crosses and cycles are free. This crate
//! provides the data model ([`core`]), polynomial decomposition
//! algorithms for the tractable regimes ([`decompose`], [`polyalgos`]),
//! an exact branch-and-bound solver with admissible pruning ([`exact`]),
//! hardness-reduction instance generators and example fixtures
//! ([`generators`]), and a command-line front end with text formats
//! ([`cli`]).
//!
//! ```
//! use colflow::{exact_min_cost, fixture, verify_decomposition, CostMode};
//!
//! let instance = fixture("fig1")?;
//! let result = exact_min_cost(&instance, CostMode::ColourCost)?;
//! assert_eq!(result.optimal_cost, 2);
//! verify_decomposition(&instance.network, &instance.flow, &result.decomposition)?;
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod core;
pub mod decompose;
pub mod exact;
pub mod generators;
pub mod maxflow;
pub mod polyalgos;

pub use crate::core::{
    balance, decomposition_cost, flow_value, is_acyclic, path_colour_count, positive_colour_set,
    support, validate_flow, verify_decomposition, Arc, ArcId, ColouredNetwork, CycleFlow,
    Decomposition, Flow, FlowError, Instance, NetworkError, PathFlow, VertexId,
};
pub use crate::decompose::{flow_decompose, greedy_max_value_decompose};
pub use crate::exact::{
    decide_k_cost, decide_k_cost_with_limits, exact_min_cost, exact_min_cost_with_limits,
    lower_bound, CostMode, ExactError, ExactResult, SearchLimits,
};
pub use crate::generators::{
    fixture, gen_1in3sat, gen_3partition, gen_from_splittable, gen_greedy_gap, gen_weak2linkage,
    Certificate, GenError, GeneratedInstance, LinkageBase,
};
pub use crate::maxflow::{max_flow, max_flow_value_multiple, MaxFlowError, MaxFlowResult};
pub use crate::polyalgos::{
    decompose_two_values_divisible, decompose_uniform, flow_decomposition_2v,
    mincost_bichromatic_divisible, mincost_bichromatic_uniform, BichromaticUniformResult,
    PolyError, TwoValueTrace,
};
