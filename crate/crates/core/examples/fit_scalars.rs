//! Recover the scalars of a decomposition from the generators alone.

use coqe::coqe::{fit_decomposition, FitMode, FitResult};
use coqe::geometry::CurvatureBundle;
use coqe::harness::resolve_manifest;

fn show(label: &str, f: &FitResult) {
    println!("{label}: rank {}, nullity {}", f.rank, f.nullity());
    for (name, v) in FitResult::unknown_names().iter().zip(&f.values) {
        if !v.is_zero() {
            println!("  {name} = {v}");
        }
    }
}

fn main() {
    let m = resolve_manifest("godel").unwrap();
    let b = CurvatureBundle::new(m.metric.clone());
    let st = m.structure.as_ref().unwrap();
    let point = fit_decomposition(&b, &st.omega, &st.d1, &st.d2, FitMode::Pointwise).unwrap();
    show("pointwise", &point);
    let constant = fit_decomposition(&b, &st.omega, &st.d1, &st.d2, FitMode::Constant { seed: 42 }).unwrap();
    show("constant", &constant);
}
