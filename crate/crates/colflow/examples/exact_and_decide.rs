//! The exact branch-and-bound solver: minimum path count, minimum colour
//! cost, threshold decisions, and what running out of node budget looks
//! like.

use colflow::{
    decide_k_cost, exact_min_cost, exact_min_cost_with_limits, fixture, greedy_max_value_decompose,
    lower_bound, CostMode, ExactError, SearchLimits,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A chain of values 1, 2, 4 built to punish widest-first peeling:
    // always grabbing the fattest path leaves crumbs that each need
    // their own path afterwards.
    let chain = fixture("fig4")?;
    let greedy = greedy_max_value_decompose(&chain.network, &chain.flow)?;
    let fewest = exact_min_cost(&chain, CostMode::PathCount)?;
    println!(
        "widest-first peeling uses {} paths, the optimum is {} ({} nodes searched)",
        greedy.paths.len(),
        fewest.optimal_cost,
        fewest.nodes_explored,
    );
    assert!(greedy.paths.len() as u64 > fewest.optimal_cost);

    // Same chain with a two-colour palette, now minimizing colour cost.
    let coloured = fixture("fig6")?;
    let bound = lower_bound(&coloured);
    let best = exact_min_cost(&coloured, CostMode::ColourCost)?;
    println!(
        "\ncolour cost: lower bound {bound}, optimum {} ({} paths, {} nodes)",
        best.optimal_cost,
        best.decomposition.paths.len(),
        best.nodes_explored,
    );
    assert!(bound <= best.optimal_cost);

    // Threshold form of the same question. Deciding is cheaper than
    // optimizing because the search can discard anything over the budget.
    let k = best.optimal_cost;
    match decide_k_cost(&coloured, k)? {
        Some(witness) => println!("cost <= {k}: yes, witness cost {}", witness.cost),
        None => unreachable!("the optimum itself is always feasible"),
    }
    match decide_k_cost(&coloured, k - 1)? {
        Some(_) => unreachable!("nothing beats the optimum"),
        None => println!("cost <= {}: no", k - 1),
    }

    // A starved node budget fails loudly instead of guessing.
    let starved = SearchLimits {
        node_budget: 2,
        ..SearchLimits::default()
    };
    match exact_min_cost_with_limits(&coloured, CostMode::ColourCost, starved) {
        Err(ExactError::BudgetExceeded { nodes_explored }) => {
            println!("\nbudget of 2 nodes: inconclusive after {nodes_explored} expansions")
        }
        other => unreachable!("expected a budget error, got {other:?}"),
    }
    Ok(())
}
