//! Generators built from powers of the Ricci operator, and the quartic
//! Ricci condition that forces a decomposition.

use crate::geometry::{eval2, CurvatureBundle, OneForm, Tensor, VectorField};
use crate::symexpr::{simplify, Expr};

use super::CoqeError;

#[derive(Clone, Debug, PartialEq)]
pub struct Generators {
    pub omega: [OneForm; 4],
    /// 1-based indices of forms that came out identically zero.
    pub degenerate: Vec<usize>,
}

/// `ω¹ = g(·, U)` and `ω^{k+1}(X) = ω¹(Q^k X)`.
pub fn synthesize_generators(bundle: &CurvatureBundle, u: &VectorField) -> Result<Generators, CoqeError> {
    if u.is_zero() {
        return Err(CoqeError::ZeroField);
    }
    let n = bundle.dim();
    let q = bundle.ricci_operator();
    let w1 = bundle.metric().flat(u);
    let mut forms = vec![w1];
    for _ in 1..4 {
        let prev = forms.last().unwrap();
        let next = OneForm(
            (0..n)
                .map(|b| {
                    simplify(&(0..n).filter(|&a| !prev.0[a].is_zero()).map(|a| prev.0[a].mul(q.at(a, b))).sum())
                })
                .collect(),
        );
        forms.push(next);
    }
    let degenerate = forms.iter().enumerate().filter(|(_, w)| w.is_zero()).map(|(k, _)| k + 1).collect();
    let omega: [OneForm; 4] = forms.try_into().expect("four forms");
    Ok(Generators { omega, degenerate })
}

/// Both sides of the quartic condition at four vectors, term by term.
#[derive(Clone, Debug, PartialEq)]
pub struct ExistenceResidual {
    /// `S³(X,Z) S³(Y,W)`.
    pub lhs: Expr,
    /// The twelve right-hand summands, coefficients included, in listed order.
    pub terms: Vec<(String, Expr)>,
    /// `lhs − Σ terms`.
    pub residual: Expr,
}

/// Evaluate the condition literally; `coeffs` are `a₀ … a₁₀`.
pub fn existence_hypothesis_residual(
    bundle: &CurvatureBundle,
    coeffs: &[Expr; 11],
    d1: &Tensor,
    d2: &Tensor,
    vectors: [&VectorField; 4],
) -> Result<ExistenceResidual, CoqeError> {
    let [x, y, z, w] = vectors;
    let g = bundle.metric().tensor();
    let s1 = bundle.ricci().clone();
    let s2 = bundle.ricci_power(2)?;
    let s3 = bundle.ricci_power(3)?;
    let f = |t: &Tensor, u: &VectorField, v: &VectorField| eval2(t, u, v);
    // symmetric pairing P(X,Y)Q(Z,W) + P(Z,W)Q(X,Y)
    let sym = |p: &Tensor, q: &Tensor| f(p, x, y).mul(&f(q, z, w)).add(&f(p, z, w).mul(&f(q, x, y)));
    let a = coeffs;
    let terms: Vec<(String, Expr)> = vec![
        ("S(Y,Z)S(X,W)".into(), f(&s1, y, z).mul(&f(&s1, x, w))),
        ("-a0 S(X,Z)S(Y,W)".into(), a[0].neg().mul(&f(&s1, x, z)).mul(&f(&s1, y, w))),
        ("a1 (S g)".into(), a[1].mul(&sym(&s1, &g))),
        ("a2 (S^2 g)".into(), a[2].mul(&sym(&s2, &g))),
        ("a3 (S^3 g)".into(), a[3].mul(&sym(&s3, &g))),
        ("a4 (S^2 S)".into(), a[4].mul(&sym(&s2, &s1))),
        ("a5 G(X,Y,Z,W)".into(), a[5].mul(&f(&g, y, z).mul(&f(&g, x, w)).sub(&f(&g, y, w).mul(&f(&g, x, z))))),
        ("a6 (S^3 S)".into(), a[6].mul(&sym(&s3, &s1))),
        ("a7 (S^3 S^2)".into(), a[7].mul(&sym(&s3, &s2))),
        ("a8 d1(X,W)g(Y,Z)".into(), a[8].mul(&f(d1, x, w)).mul(&f(&g, y, z))),
        ("a9 d2(X,W)g(Y,Z)".into(), a[9].mul(&f(d2, x, w)).mul(&f(&g, y, z))),
        ("a10 S^2(X,Z)S^2(Y,W)".into(), a[10].mul(&f(&s2, x, z)).mul(&f(&s2, y, w))),
    ];
    let terms: Vec<(String, Expr)> = terms.into_iter().map(|(k, v)| (k, simplify(&v))).collect();
    let lhs = simplify(&f(&s3, x, z).mul(&f(&s3, y, w)));
    let rhs: Expr = terms.iter().map(|(_, v)| v.clone()).sum();
    let residual = simplify(&lhs.sub(&rhs));
    Ok(ExistenceResidual { lhs, terms, residual })
}
