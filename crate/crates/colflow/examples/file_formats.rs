//! The text formats end to end: write an instance file, read it back,
//! solve, write the solution listing, read that back, and check it still
//! verifies against the original flow.

use colflow::cli::format::{
    parse_instance, parse_solution, serialize_instance, serialize_solution,
    solution_to_decomposition,
};
use colflow::{exact_min_cost, fixture, verify_decomposition, CostMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instance = fixture("fig8")?;

    // Instance files: a `p cfd` size line, an `n` terminal line, one `a`
    // line per arc (tail, head, capacity, flow, colour), 1-indexed.
    let text = serialize_instance(&instance);
    println!("instance file:\n{text}");

    let reread = parse_instance(&text)?;
    assert_eq!(reread.network.arcs(), instance.network.arcs());
    assert_eq!(reread.flow, instance.flow);
    println!("parsed back: identical network and flow\n");

    // Solution listings: an `s` header, then one `P`/`C` line per
    // component as a vertex sequence with `@id` arc tags.
    let solved = exact_min_cost(&instance, CostMode::ColourCost)?;
    let listing = serialize_solution(&instance.network, &solved.decomposition);
    println!("solution file:\n{listing}");

    let solution = parse_solution(&listing)?;
    let rebuilt = solution_to_decomposition(&instance.network, &solution)?;
    verify_decomposition(&instance.network, &instance.flow, &rebuilt)?;
    assert_eq!(rebuilt.cost, solved.optimal_cost);
    println!("round trip verified at cost {}", rebuilt.cost);
    Ok(())
}
