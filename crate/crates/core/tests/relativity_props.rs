//! Stress-energy, field-equation and space-matter properties.

mod common;

use coqe::geometry::{CurvatureBundle, OneForm, Tensor};
use coqe::harness::random_polynomial_metric;
use coqe::relativity::{
    div_space_matter, div_space_matter_direct, efe_residual_for, ricci_from_fluids, stress_energy, FluidComponent,
    GravConstants,
};
use coqe::symexpr::Expr;
use proptest::prelude::*;

use common::point;

fn off_diagonal(v: &[i64]) -> Tensor {
    Tensor::covariant(4, 2, |i| if i[0] == i[1] { Expr::zero() } else { Expr::int(v[i[0] + i[1]]) })
}

fn fluid() -> impl Strategy<Value = FluidComponent> {
    (
        -5i64..=5,
        -5i64..=5,
        -5i64..=5,
        proptest::collection::vec(-2i64..=2, 6),
        proptest::collection::vec(-2i64..=2, 4),
        proptest::collection::vec(-2i64..=2, 4),
    )
        .prop_map(|(s, p, z, e, u, q)| {
            let form = |v: Vec<i64>| OneForm(v.into_iter().map(Expr::int).collect());
            FluidComponent::new(Expr::int(s), Expr::int(p), Expr::int(z), off_diagonal(&e), form(u), form(q)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stress_energy_is_symmetric(seed in 0u64..400, r in fluid(), m in fluid()) {
        let metric = random_polynomial_metric(seed, 4, true).unwrap();
        prop_assert!(stress_energy(&r, &m, &metric).unwrap().is_symmetric());
    }

    #[test]
    fn fluid_ricci_satisfies_field_equations(
        seed in 0u64..400,
        r in fluid(),
        m in fluid(),
        kappa in 1i64..=5,
        lambda in -3i64..=3,
    ) {
        let metric = random_polynomial_metric(seed, 4, true).unwrap();
        let consts = GravConstants::new(Expr::int(kappa), Expr::int(lambda)).unwrap();
        let t = stress_energy(&r, &m, &metric).unwrap();
        let scalar = Expr::var("R");
        let fr = ricci_from_fluids(&r, &m, &consts, &metric, &scalar).unwrap();
        prop_assert!(efe_residual_for(&fr.ricci, &scalar, &metric, &t, &consts).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn div_p_closed_form_matches_direct_route(
        seed in 0u64..400,
        k in 0usize..4,
        c in -3i64..=3,
        lambda in -2i64..=2,
        x in proptest::collection::vec(-0.5f64..0.5, 4),
    ) {
        let b = CurvatureBundle::new(random_polynomial_metric(seed, 4, true).unwrap());
        let sigma = Expr::int(c).mul(&b.metric().chart().coord_expr(k));
        let consts = GravConstants::new(Expr::int(2), Expr::int(lambda)).unwrap();
        let closed = div_space_matter(&b, &sigma);
        let direct = div_space_matter_direct(&b, &consts, &sigma).unwrap();
        let p = point(b.metric(), &x);
        for (a, d) in closed.eval_f64(&p).unwrap().into_iter().zip(direct.eval_f64(&p).unwrap()) {
            prop_assert!((a - d).abs() <= 1e-8, "{} vs {}", a, d);
        }
    }
}
