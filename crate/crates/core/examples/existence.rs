//! Generators from powers of the Ricci operator and the quartic condition.

use coqe::coqe::{existence_hypothesis_residual, synthesize_generators};
use coqe::geometry::{CurvatureBundle, Tensor, VectorField};
use coqe::harness::resolve_manifest;
use coqe::symexpr::Expr;

fn main() {
    let m = resolve_manifest("godel").unwrap();
    let b = CurvatureBundle::new(m.metric.clone());
    let u = VectorField::basis(4, 0);
    let gens = synthesize_generators(&b, &u).unwrap();
    for (k, w) in gens.omega.iter().enumerate() {
        let comps: Vec<String> = w.0.iter().map(|e| e.to_string()).collect();
        println!("ω{} = [{}]", k + 1, comps.join(", "));
    }
    println!("degenerate: {:?}", gens.degenerate);

    let coeffs: [Expr; 11] = std::array::from_fn(|k| Expr::var(&format!("a{k}")));
    let zero = Tensor::covariant(4, 2, |_| Expr::zero());
    let e = |i| VectorField::basis(4, i);
    let (x, y, z, w) = (e(0), e(2), e(0), e(2));
    let res = existence_hypothesis_residual(&b, &coeffs, &zero, &zero, [&x, &y, &z, &w]).unwrap();
    println!("lhs = {}", res.lhs);
    for (name, v) in res.terms.iter().filter(|(_, v)| !v.is_zero()) {
        println!("  {name}: {v}");
    }
}
