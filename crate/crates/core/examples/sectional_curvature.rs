//! Sectional curvature of planes on the round 4-sphere and the Gödel metric.

use coqe::coqe::sectional_from_structure;
use coqe::geometry::{CurvatureBundle, VectorField};
use coqe::harness::{parse_plane, resolve_manifest};

fn main() {
    let sphere = resolve_manifest("round-sphere-4").unwrap();
    let b = CurvatureBundle::new(sphere.metric.clone());
    let (x, y) = parse_plane(sphere.chart(), "1,0,0,0;0,1,1,0").unwrap();
    println!("S^4, plane (e1, e2+e3): K = {}", b.sectional_curvature(&x, &y).unwrap());
    let forms = sectional_from_structure(sphere.structure.as_ref().unwrap(), 4).unwrap();
    println!("closed forms: K(X,Y) = {}, K(X,W1) = {}", forms.k_xy, forms.k_xw[0]);

    let godel = resolve_manifest("godel").unwrap();
    let b = CurvatureBundle::new(godel.metric.clone());
    for (i, j) in [(0, 1), (0, 3), (1, 2), (1, 3)] {
        let k = b.sectional_curvature(&VectorField::basis(4, i), &VectorField::basis(4, j)).unwrap();
        println!("Gödel K(∂{}, ∂{}) = {k}", i + 1, j + 1);
    }
}
