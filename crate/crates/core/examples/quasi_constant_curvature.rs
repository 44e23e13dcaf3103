//! Build the 13-coefficient curvature ansatz, confirm it is Weyl-free and
//! contract it to a Ricci decomposition.

use coqe::coqe::{build_qcc_curvature, qcc_contract, QccCoefficients};
use coqe::geometry::{weyl_of, Chart, Metric, OneForm, Tensor};
use coqe::symexpr::Expr;

fn main() {
    let n = 5;
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let g = Metric::diagonal(Chart::coordinates(&refs).unwrap(), vec![Expr::one(); n]).unwrap();
    let a = QccCoefficients(std::array::from_fn(|k| Expr::var(&format!("a{}", k + 1))));
    let omega = std::array::from_fn(|i| OneForm::basis(n, i));
    let d = Tensor::covariant(n, 2, |i| match (i[0], i[1]) {
        (1, 1) => Expr::one(),
        (2, 2) => Expr::int(-1),
        _ => Expr::zero(),
    });

    let r = build_qcc_curvature(&a, &g, &omega, &d, &d).unwrap();
    println!("nonzero curvature components: {}", r.nonzero().len());
    println!("Weyl tensor vanishes: {}", weyl_of(&r, &g).is_zero());

    let c = qcc_contract(&a, &g, &omega, &d, &d).unwrap();
    println!("contraction matches the listed map: {}", c.matches());
    for (k, b) in c.b.iter().enumerate() {
        println!("  b{} = {b}", k + 1);
    }
}
