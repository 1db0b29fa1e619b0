//! Minimum colour cost on two-coloured flows: the uniform construction
//! for equal arc values and the divisible construction for value pairs
//! where the smaller divides the larger. Both match the exact solver.

use colflow::{
    exact_min_cost, fixture, mincost_bichromatic_divisible, mincost_bichromatic_uniform,
    verify_decomposition, BichromaticUniformResult, ColouredNetwork, CostMode, Flow, Instance,
};

fn report(tag: &str, r: &BichromaticUniformResult) {
    println!(
        "{tag}: {} paths ({} colour-1, {} colour-2, {} bichromatic), cost {}",
        r.p, r.p1, r.p2, r.p12, r.cost
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Uniform case: every arc carries value 1, two colours in play.
    // Monochromatic paths are saturated colour by colour; whatever mass
    // is left has to pay for both colours.
    let uniform = fixture("fig1")?;
    let ur = mincost_bichromatic_uniform(&uniform.network, &uniform.flow, 1)?;
    report("uniform", &ur);
    verify_decomposition(&uniform.network, &uniform.flow, &ur.decomposition)?;

    let exact = exact_min_cost(&uniform, CostMode::ColourCost)?;
    assert_eq!(ur.cost, exact.optimal_cost);
    println!("exact solver agrees: {}", exact.optimal_cost);

    // Divisible case: one value per colour (here colour 1 always carries
    // 4 and colour 2 always carries 2). The colour-4 inflow outweighs
    // what pure colour-2 routing can drain, so two paths must mix.
    let network = ColouredNetwork::new(
        3,
        vec![
            (0, 1, 4, 1), // s -> a, colour 1, the heavy lane
            (0, 1, 2, 2), // s -> a, colour 2
            (1, 2, 2, 2), // three colour-2 lanes a -> t
            (1, 2, 2, 2),
            (1, 2, 2, 2),
        ],
    )?;
    let flow = Flow::new(0, 2, vec![4, 2, 2, 2, 2]);
    let divisible = Instance::new(network, flow, None)?;
    println!(
        "\ndivisible instance: flow value {}, arc values {:?}",
        divisible.flow_value(),
        divisible.flow.positive_value_set(),
    );
    let dr = mincost_bichromatic_divisible(&divisible.network, &divisible.flow, 4, 2)?;
    report("divisible", &dr);
    verify_decomposition(&divisible.network, &divisible.flow, &dr.decomposition)?;

    let exact = exact_min_cost(&divisible, CostMode::ColourCost)?;
    assert_eq!(dr.cost, exact.optimal_cost);
    println!("exact solver agrees: {}", exact.optimal_cost);
    Ok(())
}
