//! Killing, Codazzi and cyclic-parallel defects, and the character of a
//! vector field.

use coqe::geometry::{codazzi_defect, cyclic_parallel_defect, killing_defect, vector_field_character, CurvatureBundle, VectorField};
use coqe::harness::resolve_manifest;

fn main() {
    let godel = resolve_manifest("godel").unwrap();
    let b = CurvatureBundle::new(godel.metric.clone());
    for i in 0..4 {
        let d = killing_defect(b.metric(), &VectorField::basis(4, i));
        println!("∂{} Killing: {}", i + 1, d.is_zero());
    }
    println!("Ricci is Codazzi: {}", codazzi_defect(b.ricci(), &b).unwrap().is_zero());
    println!("Ricci is cyclic parallel: {}", cyclic_parallel_defect(b.ricci(), &b).unwrap().is_zero());

    let flat = resolve_manifest("flat-euclidean").unwrap();
    let fb = CurvatureBundle::new(flat.metric.clone());
    let position = VectorField((0..4).map(|i| flat.chart().coord_expr(i)).collect());
    println!("position field on R^4: {}", vector_field_character(&fb, &position).unwrap().label());
    println!("∂1 on R^4: {}", vector_field_character(&fb, &VectorField::basis(4, 0)).unwrap().label());
}
