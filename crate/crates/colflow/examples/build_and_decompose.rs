//! Build a coloured network by hand, attach a flow, decompose it into
//! paths and cycles, and verify the result.

use colflow::{
    balance, flow_decompose, validate_flow, verify_decomposition, ColouredNetwork, Decomposition,
    Flow,
};

fn print_decomposition(network: &ColouredNetwork, d: &Decomposition) {
    for p in &d.paths {
        let vs: Vec<String> = p.vertices(network).iter().map(usize::to_string).collect();
        println!("  path  value {:>2}  {}", p.value, vs.join(" -> "));
    }
    for c in &d.circulation {
        let vs: Vec<String> = c.vertices(network).iter().map(usize::to_string).collect();
        println!("  cycle value {:>2}  {}", c.value, vs.join(" -> "));
    }
    println!("  colour cost {}", d.cost);
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Vertices: s = 0, a = 1, b = 2, c = 3, t = 4. A three-arc spine
    // carries the traffic; a small cycle through c rides on top of it.
    let network = ColouredNetwork::new(
        5,
        vec![
            (0, 1, 4, 1), // s -> a, colour 1
            (1, 2, 4, 1), // a -> b, colour 1
            (2, 4, 4, 3), // b -> t, colour 3
            (2, 3, 2, 2), // b -> c, colour 2
            (3, 1, 2, 2), // c -> a, colour 2
            (0, 2, 2, 2), // s -> b, colour 2 (unused by this flow)
        ],
    )?;
    let flow = Flow::new(0, 4, vec![3, 4, 3, 1, 1, 0]);

    // Every vertex except the terminals must balance.
    let value = validate_flow(&network, &flow)?;
    println!("flow value {value}");
    for v in 0..network.vertex_count() {
        println!("  balance({v}) = {}", balance(&network, &flow, v));
    }

    // Path peeling: extracts source-sink paths at their bottleneck until
    // the paths carry the whole flow value, then peels what circulates.
    let plain = flow_decompose(&network, &flow)?;
    println!("\ndecomposition:");
    print_decomposition(&network, &plain);
    verify_decomposition(&network, &flow, &plain)?;

    // The verifier rejects anything that does not add back up to the flow.
    let mut tampered = plain.clone();
    tampered.paths[0].value += 1;
    match verify_decomposition(&network, &flow, &tampered) {
        Ok(_) => unreachable!("tampered decomposition must not verify"),
        Err(e) => println!("\ntampered copy rejected: {e}"),
    }
    Ok(())
}
