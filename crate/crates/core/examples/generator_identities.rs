//! Trace, directional and length identities for the Gödel structure, each
//! in its unit-generator and Gram-corrected form.

use coqe::coqe::{generator_ricci_values, length_identity, trace_identity};
use coqe::geometry::CurvatureBundle;
use coqe::harness::resolve_manifest;

fn main() {
    let m = resolve_manifest("godel").unwrap();
    let b = CurvatureBundle::new(m.metric.clone());
    let st = m.structure.as_ref().unwrap();

    let t = trace_identity(&b, st);
    println!("trace: unit-generator {}, corrected {}, r = {}", t.literal_value, t.corrected_value, t.computed_r);

    let g = generator_ricci_values(&b, st);
    for d in &g.identities {
        println!(
            "S(W{},W{}) = {:<14} unit-generator form {:<5} corrected {}",
            d.pair.0,
            d.pair.1,
            d.direct.to_string(),
            d.literal_holds,
            d.corrected_holds
        );
    }

    let l = length_identity(&b, st).unwrap();
    println!("length: literal {}, corrected {}", l.literal_holds.label(), l.corrected_holds.label());
    println!("|S|² = {}", l.s2);
}
