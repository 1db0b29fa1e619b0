//! Decompose a flow whose arcs carry only two distinct values. The path
//! count follows the remainder chain of the value pair, far below the
//! value/gcd count that peeling gcd-sized paths would produce.

use colflow::{fixture, flow_decomposition_2v, verify_decomposition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Five parallel arcs of value 7 feeding seven parallel arcs of value
    // 5: total flow 35, every s-t path one arc of each value.
    let instance = fixture("fig3")?;
    let (network, flow) = (&instance.network, &instance.flow);
    println!(
        "flow value {}, arc values {:?}",
        instance.flow_value(),
        flow.positive_value_set(),
    );

    let trace = flow_decomposition_2v(network, flow, 7, 5)?;

    // One batch of equal-value paths per iteration; the working value
    // steps down the Euclid chain of (7, 5) and ends at their gcd.
    println!("\niteration  working value  paths extracted");
    for (i, (&a, &p)) in trace.a_sequence.iter().zip(&trace.p).enumerate() {
        println!("{i:>9}  {a:>13}  {p:>15}");
    }
    println!("\ntotal paths {}", trace.total_paths());
    assert_eq!(trace.total_paths(), 11);
    assert_eq!(*trace.a_sequence.last().unwrap(), gcd(7, 5));

    // Peeling value-gcd paths instead would need value/gcd of them.
    println!(
        "naive gcd-sized peeling would use {} paths",
        instance.flow_value() / gcd(7, 5)
    );

    let decomposition = trace.into_decomposition(network);
    verify_decomposition(network, flow, &decomposition)?;
    println!("decomposition verified, {} paths", decomposition.paths.len());
    Ok(())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
