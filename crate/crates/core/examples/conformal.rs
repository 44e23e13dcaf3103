//! Weyl and Cotton tensors, the divergence identity linking them, and the
//! conharmonic defect of a scalar.

use coqe::geometry::{conformal_rescale, conharmonic_defect, CurvatureBundle};
use coqe::harness::{random_polynomial_metric, resolve_manifest};
use coqe::symexpr::Expr;

fn main() {
    let godel = CurvatureBundle::new(resolve_manifest("godel").unwrap().metric);
    let w = godel.weyl().unwrap();
    println!("Gödel Weyl: {} nonzero components", w.nonzero().len());
    let divw = godel.div_weyl().unwrap();
    let c = godel.cotton().unwrap();
    println!("div C + Cotton/2 = 0: {}", divw.add(&c.scale(&Expr::frac(1, 2))).is_zero());

    let m = random_polynomial_metric(3, 4, true).unwrap();
    let b = CurvatureBundle::new(m.clone());
    println!("random metric: Cotton nonzero components {}", b.cotton().unwrap().nonzero().len());
    let sigma = m.chart().coord_expr(0).scale(&coqe::symexpr::q(1, 3));
    let rescaled = conformal_rescale(&m, &sigma).unwrap();
    println!("e^(2σ) g with σ = {sigma}: g11 = {}", rescaled.g(0, 0));
    println!("conharmonic defect of σ: {}", conharmonic_defect(&b, &sigma));
}
