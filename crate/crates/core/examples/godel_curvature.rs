//! Christoffel symbols, Ricci tensor and scalar curvature of the Gödel metric.

use coqe::geometry::CurvatureBundle;
use coqe::harness::resolve_manifest;

fn main() {
    let m = resolve_manifest("godel").unwrap();
    let b = CurvatureBundle::new(m.metric.clone());
    let names: Vec<&str> = m.chart().coords().iter().map(|s| s.name()).collect();
    println!("coordinates {names:?}");
    for (i, e) in b.christoffel().nonzero() {
        if i[1] <= i[2] {
            println!("Γ^{}_{{{}{}}} = {e}", names[i[0]], names[i[1]], names[i[2]]);
        }
    }
    for (i, e) in b.ricci().nonzero() {
        if i[0] <= i[1] {
            println!("S_{}{} = {e}", i[0] + 1, i[1] + 1);
        }
    }
    println!("r = {}", b.scalar());
    if let Some(st) = &m.structure {
        println!("declared r = {}", st.declared_r.as_ref().unwrap());
    }
}
