//! Two-fluid stress-energy, the field equations and the induced Ricci
//! decomposition on the Einstein-de Sitter dust model.

use coqe::geometry::CurvatureBundle;
use coqe::harness::resolve_manifest;
use coqe::relativity::{
    efe_residual, energy_density_consistency, fluid_normalization, ricci_from_fluids, stress_energy,
};

fn main() {
    let m = resolve_manifest("einstein-desitter").unwrap();
    let b = CurvatureBundle::new(m.metric.clone());
    let (r, mat) = m.fluids.clone().unwrap();
    let consts = m.constants.clone().unwrap();

    let t = stress_energy(&r, &mat, b.metric()).unwrap();
    println!("T_11 = {}", t.at(0, 0));
    println!("field equations hold: {}", efe_residual(&b, &t, &consts).is_zero());

    let fr = ricci_from_fluids(&r, &mat, &consts, b.metric(), b.scalar()).unwrap();
    for (name, v) in fr.identification.terms() {
        println!("  {name} = {v}");
    }
    println!("fluid Ricci equals the metric's: {}", fr.ricci.sub(b.ricci()).is_zero());

    let st = m.structure.as_ref().unwrap();
    let e = energy_density_consistency(st, &consts, &r.p, &mat.p).unwrap();
    println!("σ_r: literal {}, from b11 {}", e.literal.0, e.identified.0);

    for it in fluid_normalization(&r, &mat, b.metric()) {
        println!("  {:<24} {}", it.label, if it.holds { "holds" } else { "fails" });
    }
}
