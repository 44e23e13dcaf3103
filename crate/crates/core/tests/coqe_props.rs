//! Structure, classification, fit and quasi-constant curvature properties.

use coqe::coqe::{
    build_qcc_curvature, classify, decomposition_residual, fit_decomposition, trace_identity_for, CoQEStructure,
    FitMode, QccCoefficients,
};
use coqe::geometry::{index_tuples, CurvatureBundle, OneForm, Tensor};
use coqe::harness::random_polynomial_metric;
use coqe::symexpr::{simplify, Expr};
use proptest::prelude::*;

fn sym_const(v: &[i64]) -> Tensor {
    Tensor::covariant(4, 2, |i| {
        let (p, q) = (i[0].min(i[1]), i[0].max(i[1]));
        Expr::int(v[p * 4 - p * (p + 1) / 2 + q])
    })
}

fn ints(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, n)
}

/// Random constant scalars, coordinate generators and constant `d`'s.
fn structure() -> impl Strategy<Value = CoQEStructure> {
    (ints(1), ints(10), ints(2), ints(10), ints(10)).prop_map(|(a, b, c, d1, d2)| {
        let mut bm: [[Expr; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in i..4 {
                let v = Expr::int(b[i * 4 - i * (i + 1) / 2 + j]);
                bm[i][j] = v.clone();
                bm[j][i] = v;
            }
        }
        let omega = std::array::from_fn(|i| OneForm::basis(4, i));
        CoQEStructure::new(
            Expr::int(a[0]),
            bm,
            Expr::int(c[0]),
            Expr::int(c[1]),
            omega,
            sym_const(&d1),
            sym_const(&d2),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residual_is_symmetric(seed in 0u64..400, st in structure()) {
        let b = CurvatureBundle::new(random_polynomial_metric(seed, 4, true).unwrap());
        prop_assume!(!b.ricci().is_zero());
        prop_assert!(decomposition_residual(&b, &st).unwrap().is_symmetric());
    }

    #[test]
    fn classification_ignores_scaling(st in structure(), num in 1i64..=9, den in 1i64..=9, neg in any::<bool>()) {
        let l = Expr::frac(if neg { -num } else { num }, den);
        prop_assert_eq!(classify(&st.scaled(&l)), classify(&st));
    }

    #[test]
    fn corrected_trace_is_scalar_curvature(seed in 0u64..400, st in structure()) {
        let m = random_polynomial_metric(seed, 4, seed % 2 == 1).unwrap();
        let ricci = st.model(&m);
        let t = trace_identity_for(&ricci, &m, &st);
        prop_assert_eq!(t.corrected_value, simplify(&m.trace(&ricci)));
    }

    #[test]
    fn qcc_tensor_has_curvature_symmetries(seed in 0u64..400, d1 in ints(10), d2 in ints(10)) {
        let m = random_polynomial_metric(seed, 4, true).unwrap();
        let a = QccCoefficients(std::array::from_fn(|k| Expr::var(&format!("a{}", k + 1))));
        let omega = std::array::from_fn(|i| OneForm::basis(4, i));
        let r = build_qcc_curvature(&a, &m, &omega, &sym_const(&d1), &sym_const(&d2)).unwrap();
        for i in index_tuples(4, 4) {
            let (x, y, z, w) = (i[0], i[1], i[2], i[3]);
            let v = r.get(&i);
            prop_assert!(simplify(&v.add(r.get(&[y, x, z, w]))).is_zero());
            prop_assert!(simplify(&v.sub(r.get(&[z, w, x, y]))).is_zero());
            prop_assert!(simplify(&v.add(r.get(&[y, z, x, w])).add(r.get(&[z, x, y, w]))).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn exact_fits_reproduce_ricci(seed in 0u64..400, d1 in ints(10), d2 in ints(10)) {
        let b = CurvatureBundle::new(random_polynomial_metric(seed, 4, true).unwrap());
        prop_assume!(!b.ricci().is_zero());
        let omega: [OneForm; 4] = std::array::from_fn(|i| OneForm::basis(4, i));
        let (d1, d2) = (sym_const(&d1), sym_const(&d2));
        if let Ok(f) = fit_decomposition(&b, &omega, &d1, &d2, FitMode::Pointwise) {
            let st = f.into_structure(omega, d1, d2).unwrap();
            prop_assert!(decomposition_residual(&b, &st).unwrap().is_zero());
        }
    }
}
