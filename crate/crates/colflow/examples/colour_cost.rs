//! Why route choice matters: the same flow decomposed two ways, once
//! paying four colours and once paying the provable minimum of two.

use colflow::{
    exact_min_cost, fixture, path_colour_count, verify_decomposition, CostMode, CycleFlow,
    Decomposition, PathFlow,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two unit paths worth of flow on an eight-arc network whose two
    // colours interleave around a central cycle.
    let instance = fixture("fig1")?;
    let network = &instance.network;
    println!(
        "{} vertices, {} arcs, colours {:?}, flow value {}",
        network.vertex_count(),
        network.arc_count(),
        network.colour_set(),
        instance.flow_value(),
    );

    // The tempting routing: both two-arc shortcuts to the sink, leaving
    // the central cycle as a circulation. Each shortcut changes colour
    // midway, so the decomposition pays for two colours twice.
    let shortcuts = Decomposition::new(
        network,
        vec![
            PathFlow { arcs: vec![0, 3], value: 1 }, // s -> a -> t
            PathFlow { arcs: vec![1, 6], value: 1 }, // s -> c -> t
        ],
        vec![CycleFlow { arcs: vec![2, 4, 5, 7], value: 1 }], // a -> b -> c -> d -> a
    );
    verify_decomposition(network, &instance.flow, &shortcuts)?;
    println!("\nshortcut routing (valid but wasteful):");
    print_paths(network, &shortcuts);
    println!(
        "  plus a {}-arc cycle, total cost {}",
        shortcuts.circulation[0].arcs.len(),
        shortcuts.cost
    );

    // The optimum threads each path inside a single colour class,
    // absorbing the cycle arcs into the paths instead of wasting them.
    let best = exact_min_cost(&instance, CostMode::ColourCost)?;
    verify_decomposition(network, &instance.flow, &best.decomposition)?;
    println!("\nminimum-cost routing:");
    print_paths(network, &best.decomposition);
    println!("  total cost {}", best.optimal_cost);

    assert_eq!(best.optimal_cost, 2);
    assert!(shortcuts.cost > best.optimal_cost);
    Ok(())
}

fn print_paths(network: &colflow::ColouredNetwork, d: &Decomposition) {
    for p in &d.paths {
        println!(
            "  value {} path over {} colour(s): {:?}",
            p.value,
            path_colour_count(network, &p.arcs),
            p.vertices(network),
        );
    }
}
