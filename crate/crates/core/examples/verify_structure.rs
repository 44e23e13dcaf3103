//! Verify the Gödel decomposition constraint by constraint.

use coqe::coqe::verify_structure_constraints;
use coqe::geometry::CurvatureBundle;
use coqe::harness::resolve_manifest;
use coqe::symexpr::Expr;

fn main() {
    let m = resolve_manifest("godel").unwrap();
    let b = CurvatureBundle::new(m.metric.clone());
    let mut st = m.structure.clone().unwrap();
    let rep = verify_structure_constraints(&b, &st);
    for c in &rep.checks {
        println!("{:<8} {}", c.verdict.as_str(), c.name);
        for (i, e) in &c.residuals {
            println!("         {i:?} {e}");
        }
    }
    println!("class: {}", rep.classification);

    // drop the W3-W4 coupling and watch the residual appear
    st.b[2][3] = Expr::zero();
    st.b[3][2] = Expr::zero();
    let broken = verify_structure_constraints(&b, &st);
    let d = broken.check("decomposition").unwrap();
    println!("without b34: {} with {} residual components", d.verdict.as_str(), d.residuals.len());
}
