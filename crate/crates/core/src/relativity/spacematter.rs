//! The space-matter tensor `P = R + (κ/2) g∧T − σG` and its divergence.

use crate::geometry::{g_tensor, kulkarni_nomizu, CurvatureBundle, OneForm, Slot, Tensor};
use crate::symexpr::{simplify, Expr};

use super::{GravConstants, RelativityError};

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceMatter {
    pub p: Tensor,
    pub sigma: Expr,
}

/// `P = Rm + (κ/2) g∧T − σG`; `σ` is an independent input.
pub fn space_matter(bundle: &CurvatureBundle, t: &Tensor, kappa: &Expr, sigma: &Expr) -> Result<SpaceMatter, RelativityError> {
    let n = bundle.dim();
    if t.dim() != n || t.rank() != 2 {
        return Err(RelativityError::Shape(format!("T must be a rank-2 tensor on the {n}-chart")));
    }
    if !t.is_symmetric() {
        return Err(RelativityError::Asymmetric("stress-energy tensor".into()));
    }
    let metric = bundle.metric();
    let rm = bundle.curvature_form();
    let gt = kulkarni_nomizu(&metric.tensor(), t);
    let g4 = g_tensor(metric);
    let half_k = kappa.mul(&Expr::frac(1, 2));
    let p = Tensor::from_fn_par(n, &[Slot::Co; 4], |i| {
        rm.get(i).add(&half_k.mul(gt.get(i))).sub(&sigma.mul(g4.get(i)))
    });
    Ok(SpaceMatter { p, sigma: sigma.clone() })
}

/// Closed form of `div P` once `κT = S − (r/2)g + Λg` is inserted, `Λ`
/// constant:
/// `(3/2)[(∇_X S)(Y,Z) − (∇_Y S)(X,Z)] − g(Y,Z)(dσ(X) + dr(X)/4) + g(X,Z)(dσ(Y) + dr(Y)/4)`.
pub fn div_space_matter(bundle: &CurvatureBundle, sigma: &Expr) -> Tensor {
    let dsigma = bundle.gradient(sigma);
    closed_form(bundle, &dsigma)
}

fn closed_form(bundle: &CurvatureBundle, dsigma: &OneForm) -> Tensor {
    let n = bundle.dim();
    let g = bundle.metric();
    let ns = bundle.covariant_derivative(bundle.ricci());
    let dr = bundle.gradient(bundle.scalar());
    let quarter = Expr::frac(1, 4);
    let h: Vec<Expr> = (0..n).map(|i| dsigma.0[i].add(&dr.0[i].mul(&quarter))).collect();
    let three_halves = Expr::frac(3, 2);
    Tensor::from_fn_par(n, &[Slot::Co; 3], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let curl = ns.get(&[x, y, z]).sub(ns.get(&[y, x, z]));
        three_halves.mul(&curl).sub(&g.g(y, z).mul(&h[x])).add(&g.g(x, z).mul(&h[y]))
    })
}

/// `div P` computed by differentiating `P` built from
/// `T = (S − (r/2)g + Λg)/κ`.
pub fn div_space_matter_direct(
    bundle: &CurvatureBundle,
    consts: &GravConstants,
    sigma: &Expr,
) -> Result<Tensor, RelativityError> {
    let metric = bundle.metric();
    let r = bundle.scalar();
    let shift = consts.lambda.sub(&r.mul(&Expr::frac(1, 2)));
    let kinv = consts.kappa.recip()?;
    let t = Tensor::covariant(bundle.dim(), 2, |i| {
        bundle.ricci().at(i[0], i[1]).add(&shift.mul(metric.g(i[0], i[1]))).mul(&kinv)
    });
    let sm = space_matter(bundle, &t, &consts.kappa, sigma)?;
    Ok(bundle.divergence(&sm.p)?)
}

/// `dσ` forced by `div P = 0`, from contracting the closed form over `(Y,Z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaGradient {
    /// Coefficient of `dσ(X)` in the contraction, `1 − n`.
    pub coefficient: Expr,
    /// Rest of the contraction, `(3/4 − (n−1)/4) dr(X)` after the
    /// contracted Bianchi identity.
    pub remainder: OneForm,
    /// `dσ = −remainder / coefficient`.
    pub dsigma: OneForm,
}

pub fn sigma_gradient_from_div_p(bundle: &CurvatureBundle) -> Result<SigmaGradient, RelativityError> {
    let n = bundle.dim();
    let g = bundle.metric();
    let rest = closed_form(bundle, &OneForm::zero(n));
    let contract = |t: &Tensor, x: usize| -> Expr {
        let mut acc = Vec::new();
        for y in 0..n {
            for z in 0..n {
                let gi = g.ginv(y, z);
                if !gi.is_zero() && !t.get(&[x, y, z]).is_zero() {
                    acc.push(gi.mul(t.get(&[x, y, z])));
                }
            }
        }
        simplify(&acc.into_iter().sum())
    };
    // g^{YZ} applied to −g(Y,Z) dσ(X) + g(X,Z) dσ(Y)
    let trace_g: Expr = (0..n).flat_map(|y| (0..n).map(move |z| (y, z))).map(|(y, z)| g.ginv(y, z).mul(g.g(y, z))).sum();
    let coefficient = simplify(&Expr::one().sub(&trace_g));
    let remainder = OneForm((0..n).map(|x| contract(&rest, x)).collect());
    let inv = coefficient.recip()?;
    let dsigma = OneForm(remainder.0.iter().map(|c| simplify(&c.mul(&inv).neg())).collect());
    Ok(SigmaGradient { coefficient, remainder, dsigma })
}
