//! Curvature identities on random polynomial metrics.

mod common;

use coqe::geometry::{conformal_rescale, contract, index_tuples, CurvatureBundle, Metric, Tensor};
use coqe::harness::random_polynomial_metric;
use coqe::symexpr::{simplify, Expr};
use proptest::prelude::*;

use common::{point, rel_close};

fn bundle(seed: u64, lorentzian: bool) -> CurvatureBundle {
    CurvatureBundle::new(random_polynomial_metric(seed, 4, lorentzian).unwrap())
}

/// `W^a_{bcd} = g^{ae} W_{ebcd}`.
fn raise_first(w: &Tensor, m: &Metric) -> Tensor {
    let n = m.dim();
    Tensor::covariant(n, 4, |i| (0..n).map(|e| m.ginv(i[0], e).mul(w.get(&[e, i[1], i[2], i[3]]))).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn riemann_symmetries_and_first_bianchi(seed in 0u64..400, lorentzian in any::<bool>()) {
        let b = bundle(seed, lorentzian);
        let r = b.riemann();
        for i in index_tuples(4, 4) {
            let (a, bb, c, d) = (i[0], i[1], i[2], i[3]);
            let v = r.get(&i);
            prop_assert!(simplify(&v.add(r.get(&[bb, a, c, d]))).is_zero());
            prop_assert!(simplify(&v.add(r.get(&[a, bb, d, c]))).is_zero());
            prop_assert!(simplify(&v.sub(r.get(&[c, d, a, bb]))).is_zero());
            prop_assert!(simplify(&v.add(r.get(&[a, c, d, bb])).add(r.get(&[a, d, bb, c]))).is_zero());
        }
    }

    #[test]
    fn contracted_bianchi_holds(seed in 0u64..400) {
        prop_assert!(bundle(seed, true).contracted_bianchi_defect().is_zero());
    }

    #[test]
    fn weyl_is_trace_free(seed in 0u64..400) {
        let b = bundle(seed, seed % 2 == 0);
        prop_assert!(contract(&b.weyl().unwrap(), b.metric()).is_zero());
    }

    #[test]
    fn metric_is_parallel(seed in 0u64..400) {
        let b = bundle(seed, true);
        prop_assert!(b.covariant_derivative(&b.metric().tensor()).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn weyl_13_is_conformally_invariant(
        seed in 0u64..400,
        k in 0usize..4,
        c in -2i64..=2,
        x in proptest::collection::vec(-0.5f64..0.5, 4),
    ) {
        let m = random_polynomial_metric(seed, 4, true).unwrap();
        let sigma = Expr::frac(c, 3).mul(&m.chart().coord_expr(k));
        let m2 = conformal_rescale(&m, &sigma).unwrap();
        let w1 = raise_first(&CurvatureBundle::new(m.clone()).weyl().unwrap(), &m);
        let w2 = raise_first(&CurvatureBundle::new(m2.clone()).weyl().unwrap(), &m2);
        let p = point(&m, &x);
        for (a, b) in w1.eval_f64(&p).unwrap().into_iter().zip(w2.eval_f64(&p).unwrap()) {
            prop_assert!(rel_close(a, b, 1e-9), "{} vs {}", a, b);
        }
    }
}
