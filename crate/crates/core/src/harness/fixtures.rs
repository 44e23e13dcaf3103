//! Bundled manifests and a generator of random polynomial metrics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coqe::{ClassLabel, CoQEStructure};
use crate::geometry::{Chart, GeometryError, Metric, OneForm, Tensor};
use crate::linalg::{mat_mul, Matrix};
use crate::symexpr::Expr;

pub const NAMES: [&str; 7] = [
    "godel",
    "flat-euclidean",
    "flat-minkowski",
    "round-sphere-2",
    "round-sphere-4",
    "einstein-desitter",
    "polynomial-random-template",
];

/// Manifest text of a bundled fixture. `einstein-sphere` names the round
/// 4-sphere, which carries an Einstein structure.
pub fn fixture(name: &str) -> Option<&'static str> {
    Some(match name {
        "godel" => include_str!("../../fixtures/godel.toml"),
        "flat-euclidean" => include_str!("../../fixtures/flat-euclidean.toml"),
        "flat-minkowski" => include_str!("../../fixtures/flat-minkowski.toml"),
        "round-sphere-2" => include_str!("../../fixtures/round-sphere-2.toml"),
        "round-sphere-4" | "einstein-sphere" => include_str!("../../fixtures/round-sphere-4.toml"),
        "einstein-desitter" => include_str!("../../fixtures/einstein-desitter.toml"),
        "polynomial-random-template" => include_str!("../../fixtures/polynomial-random-template.toml"),
        _ => return None,
    })
}

/// `g = Lᵀ D L` with `L` unipotent lower-triangular, its strictly lower
/// entries sparse linear polynomials in the coordinates, and `D` a constant
/// diagonal with one negative entry when `lorentzian`. `det g` is constant,
/// so `g⁻¹` stays polynomial.
pub fn random_polynomial_metric(seed: u64, n: usize, lorentzian: bool) -> Result<Metric, GeometryError> {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let chart = Chart::coordinates(&refs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l: Matrix = (0..n).map(|i| (0..n).map(|j| Expr::int((i == j) as i64)).collect()).collect();
    for i in 1..n {
        for j in 0..i {
            if rng.gen_bool(0.5) {
                continue;
            }
            let coef = Expr::int(rng.gen_range(-2i64..=2));
            let c = chart.coord_expr(rng.gen_range(0..n));
            let konst = Expr::int(rng.gen_range(-1i64..=1));
            l[i][j] = coef.mul(&c).add(&konst);
        }
    }
    let d: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        Expr::zero()
                    } else if lorentzian && i == 0 {
                        Expr::int(-1)
                    } else {
                        Expr::int(rng.gen_range(1i64..=3))
                    }
                })
                .collect()
        })
        .collect();
    let lt: Matrix = (0..n).map(|i| (0..n).map(|j| l[j][i].clone()).collect()).collect();
    let g = mat_mul(&mat_mul(&lt, &d), &l);
    Metric::new(chart, g)
}

/// Synthetic structure for one taxonomy row on a Euclidean 5-chart, with
/// its own model as the Ricci tensor. Coordinate 1-forms serve as
/// generators; `d₁ = d₂ = dx₂² − dx₃²` is trace-free and kills `W₁`.
/// `ComprehensiveQE` is `b₁₁, c₁, c₂`; removing `c₂` leaves pseudo QE.
pub fn taxonomy_fixture(label: ClassLabel) -> Option<(Metric, CoQEStructure, Tensor)> {
    let n = 5;
    let (b_set, c1, c2): (Vec<(usize, usize)>, bool, bool) = match label {
        ClassLabel::ComprehensiveQE => (vec![(1, 1)], true, true),
        ClassLabel::NoneOfListed => return None,
        row => {
            let (b, c) = row.pattern()?;
            (b.to_vec(), c, false)
        }
    };
    let mut bm: [[Expr; 4]; 4] = Default::default();
    for (k, &(i, j)) in b_set.iter().enumerate() {
        bm[i - 1][j - 1] = Expr::int(k as i64 + 2);
        bm[j - 1][i - 1] = Expr::int(k as i64 + 2);
    }
    let omega = [0, 1, 2, 3].map(|i| OneForm::basis(n, i));
    let d = Tensor::covariant(n, 2, |i| match (i[0], i[1]) {
        (1, 1) => Expr::one(),
        (2, 2) => Expr::int(-1),
        _ => Expr::zero(),
    });
    let c = |on: bool, v: i64| if on { Expr::int(v) } else { Expr::zero() };
    let st = CoQEStructure::new(Expr::one(), bm, c(c1, 3), c(c2, 5), omega, d.clone(), d).ok()?;
    let names = ["x0", "x1", "x2", "x3", "x4"];
    let metric = Metric::diagonal(Chart::coordinates(&names).ok()?, vec![Expr::one(); n]).ok()?;
    let ricci = st.model(&metric);
    Some((metric, st, ricci))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coqe::classify_verified;
    use crate::linalg::det;

    #[test]
    fn taxonomy_fixtures_classify_to_their_row() {
        let mut labels = ClassLabel::ROWS.to_vec();
        labels.push(ClassLabel::ComprehensiveQE);
        for l in labels {
            let (g, st, ricci) = taxonomy_fixture(l).unwrap();
            assert_eq!(classify_verified(&ricci, &g, &st).unwrap(), l);
        }
    }

    #[test]
    fn every_name_resolves() {
        for n in NAMES {
            assert!(fixture(n).is_some(), "{n}");
        }
        assert_eq!(fixture("einstein-sphere"), fixture("round-sphere-4"));
        assert!(fixture("nope").is_none());
    }

    #[test]
    fn random_metrics_have_constant_determinant() {
        for seed in 0..5 {
            let m = random_polynomial_metric(seed, 4, true).unwrap();
            assert!(det(m.matrix()).is_constant());
            assert_eq!(m.signature().iter().filter(|&&s| s < 0).count(), 1);
        }
    }
}
