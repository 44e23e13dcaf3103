//! The thirteen-scalar quasi-constant curvature ansatz and the sectional
//! curvatures of conformally flat structures.

use crate::geometry::{
    conformally_flat_curvature, contract, g_tensor, kulkarni_nomizu, sectional, Metric, OneForm, Tensor,
    VectorField,
};
use crate::symexpr::{is_zero, simplify, Expr};

use super::{CoQEStructure, CoqeError};

/// Form pairs of the mixed blocks `a₈ … a₁₃`, 0-based.
pub const MIXED_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 3), (1, 2), (1, 3), (2, 0), (2, 3)];

/// Coefficients `a₁ … a₁₃` of the ansatz.
#[derive(Clone, Debug, PartialEq)]
pub struct QccCoefficients(pub [Expr; 13]);

impl QccCoefficients {
    /// `a_k`, 1-based.
    pub fn a(&self, k: usize) -> &Expr {
        &self.0[k - 1]
    }

    /// Contracted coefficients `b₁ … b₁₃` as listed for orthonormal forms and
    /// trace-free tensors.
    pub fn b(&self, n: usize) -> [Expr; 13] {
        let m = Expr::int(n as i64 - 2);
        let a = |k: usize| self.a(k).clone();
        let b1 = simplify(&a(1).mul(&Expr::int(n as i64 - 1)).add(&a(4)).add(&a(5)).add(&a(6)).add(&a(7)));
        let mut out: Vec<Expr> = vec![b1];
        for k in 4..=13 {
            out.push(simplify(&m.mul(&a(k))));
        }
        out.push(simplify(&m.mul(&a(2))));
        out.push(simplify(&m.mul(&a(3))));
        out.try_into().expect("13 coefficients")
    }
}

fn sym_outer(u: &OneForm, v: &OneForm) -> Tensor {
    u.outer(v).add(&v.outer(u))
}

/// The twelve symmetric tensors `h_k` whose `h_k ∧ g` blocks follow the
/// constant-curvature block, in coefficient order `a₂ … a₁₃`.
pub fn qcc_blocks(omega: &[OneForm; 4], d1: &Tensor, d2: &Tensor) -> Vec<Tensor> {
    let mut h = vec![d1.clone(), d2.clone()];
    for w in omega {
        h.push(w.outer(w));
    }
    for &(i, j) in &MIXED_PAIRS {
        h.push(sym_outer(&omega[i], &omega[j]));
    }
    h
}

/// `R = a₁ G + (Σ_{k≥2} a_k h_k) ∧ g`.
pub fn build_qcc_curvature(
    qcc: &QccCoefficients,
    metric: &Metric,
    omega: &[OneForm; 4],
    d1: &Tensor,
    d2: &Tensor,
) -> Result<Tensor, CoqeError> {
    let n = metric.dim();
    if n <= 2 {
        return Err(CoqeError::Dimension { need: 3, got: n });
    }
    let h = combined(qcc, omega, d1, d2);
    let hg = kulkarni_nomizu(&h, &metric.tensor());
    let g4 = g_tensor(metric);
    let a1 = qcc.a(1);
    Ok(Tensor::from_fn_par(n, hg.slots(), |i| a1.mul(g4.get(i)).add(hg.get(i))))
}

fn combined(qcc: &QccCoefficients, omega: &[OneForm; 4], d1: &Tensor, d2: &Tensor) -> Tensor {
    let blocks = qcc_blocks(omega, d1, d2);
    let n = d1.dim();
    Tensor::covariant(n, 2, |i| {
        blocks
            .iter()
            .enumerate()
            .filter(|(k, _)| !qcc.0[k + 1].is_zero())
            .map(|(k, h)| qcc.0[k + 1].mul(h.at(i[0], i[1])))
            .sum()
    })
}

#[derive(Clone, Debug)]
pub struct QccContraction {
    /// Ricci contraction of the built curvature.
    pub ricci: Tensor,
    /// `b₁ g + b₂ ω¹ω¹ + … + b₁₃ d₂` with the listed coefficients.
    pub listed: Tensor,
    pub b: [Expr; 13],
    /// `ricci − listed`.
    pub residual: Tensor,
}

impl QccContraction {
    pub fn matches(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn qcc_contract(
    qcc: &QccCoefficients,
    metric: &Metric,
    omega: &[OneForm; 4],
    d1: &Tensor,
    d2: &Tensor,
) -> Result<QccContraction, CoqeError> {
    let r = build_qcc_curvature(qcc, metric, omega, d1, d2)?;
    let ricci = contract(&r, metric);
    let n = metric.dim();
    let b = qcc.b(n);
    let blocks = qcc_blocks(omega, d1, d2);
    // blocks are ordered d₁, d₂, ω-squares, mixed; the listed b's put d₁, d₂ last
    let order: Vec<(usize, &Tensor)> = (2..12).map(|k| (k - 1, &blocks[k])).chain([(11, &blocks[0]), (12, &blocks[1])]).collect();
    let listed = Tensor::covariant(n, 2, |i| {
        let mut acc = vec![b[0].mul(metric.g(i[0], i[1]))];
        for &(bk, h) in &order {
            acc.push(b[bk].mul(h.at(i[0], i[1])));
        }
        acc.into_iter().sum()
    });
    let residual = ricci.sub(&listed);
    Ok(QccContraction { ricci, listed, b, residual })
}

/// Closed-form sectional curvatures for `c₁ = c₂ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionalForms {
    /// `K(X, Y)` for `X, Y` orthogonal to every generator.
    pub k_xy: Expr,
    /// `K(X, W_i)` for `X` orthogonal to every generator.
    pub k_xw: [Expr; 4],
}

pub fn sectional_from_structure(st: &CoQEStructure, n: usize) -> Result<SectionalForms, CoqeError> {
    if !is_zero(&st.c1) || !is_zero(&st.c2) {
        return Err(CoqeError::NonzeroC);
    }
    if n < 4 {
        return Err(CoqeError::Dimension { need: 4, got: n });
    }
    let den = Expr::frac(1, ((n - 1) * (n - 2)) as i64);
    let m = Expr::int(n as i64 - 2);
    let bii: Vec<&Expr> = (0..4).map(|i| &st.b[i][i]).collect();
    let total: Expr = bii.iter().map(|e| (*e).clone()).sum();
    let k_xy = simplify(&st.a.mul(&m).sub(&total).mul(&den));
    let k_xw = std::array::from_fn(|i| {
        let others = total.sub(bii[i]);
        simplify(&st.a.add(bii[i]).mul(&m).sub(&others).mul(&den))
    });
    Ok(SectionalForms { k_xy, k_xw })
}

/// Sectional curvature of the conformally flat curvature built from the
/// structure's own Ricci tensor and its trace.
pub fn sectional_direct(st: &CoQEStructure, metric: &Metric, x: &VectorField, y: &VectorField) -> Result<Expr, CoqeError> {
    let s = st.model(metric);
    let r = metric.trace(&s);
    let rm = conformally_flat_curvature(&s, &r, metric);
    Ok(sectional(&rm, metric, x, y)?)
}
