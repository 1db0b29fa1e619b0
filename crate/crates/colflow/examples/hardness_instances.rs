//! Generator round trip: build instances from 3-Partition, weak
//! 2-linkage, and 1-in-3SAT questions, then read the answer back off the
//! colour cost at the generated threshold.

use colflow::{decide_k_cost, gen_1in3sat, gen_3partition, gen_weak2linkage, LinkageBase};

fn decide_at_threshold(
    g: &colflow::GeneratedInstance,
) -> Result<bool, Box<dyn std::error::Error>> {
    let k = g.certificate.threshold;
    let answer = decide_k_cost(&g.instance, k)?.is_some();
    println!(
        "{}: cost <= {k} is {}",
        g.provenance,
        if answer { "attainable" } else { "not attainable" }
    );
    Ok(answer)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // {4,5,6} + {4,5,6} splits into two triples of sum 15, so the boxes
    // fill exactly and the flow decomposes within the threshold.
    let yes = gen_3partition(&[4, 5, 6, 4, 5, 6], 15)?;
    assert!(decide_at_threshold(&yes)?);

    // {4,4,4,4,4,6} has no triple summing to 13 (they all hit 12 or 14),
    // so some box arc is forced to split across extra paths.
    let no = gen_3partition(&[4, 4, 4, 4, 6, 4], 13)?;
    assert!(!decide_at_threshold(&no)?);

    // Weak 2-linkage: are there arc-disjoint u1->v1 and u2->v2 paths?
    // The same four-vertex base answers yes or no depending on which
    // terminals the question names.
    let base = LinkageBase {
        vertex_count: 4,
        arcs: vec![(0, 2), (1, 3)],
        u1: 0,
        u2: 1,
        v1: 2,
        v2: 3,
    };
    println!();
    let linked = gen_weak2linkage(&base, 1, false)?;
    assert!(decide_at_threshold(&linked)?);

    let crossed = LinkageBase {
        v1: 3,
        v2: 2,
        ..base.clone()
    };
    let unlinked = gen_weak2linkage(&crossed, 1, false)?;
    assert!(!decide_at_threshold(&unlinked)?);

    // The degree-bounded variant asks the same question on a network
    // whose vertices never exceed degree six.
    let bounded = gen_weak2linkage(&base, 1, true)?;
    assert!(decide_at_threshold(&bounded)?);

    // 1-in-3SAT: (x1, x2, x3) alone is satisfied by making exactly one
    // variable true; adding (!x1, !x2, !x3) demands exactly two, a
    // contradiction.
    println!();
    let sat = gen_1in3sat(&[[1, 2, 3]], 1)?;
    assert!(decide_at_threshold(&sat)?);

    let unsat = gen_1in3sat(&[[1, 2, 3], [-1, -2, -3]], 1)?;
    assert!(!decide_at_threshold(&unsat)?);
    Ok(())
}
