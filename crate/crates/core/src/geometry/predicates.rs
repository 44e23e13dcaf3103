//! Defect tensors whose vanishing certifies a pointwise property.

use crate::symexpr::{is_zero, simplify, Expr};

use super::{CurvatureBundle, GeometryError, Metric, OneForm, Tensor, VectorField};

/// Lie derivative of the metric along `x`; zero iff `x` is Killing.
pub fn killing_defect(metric: &Metric, x: &VectorField) -> Tensor {
    let n = metric.dim();
    let chart = metric.chart();
    Tensor::covariant(n, 2, |i| {
        let (a, b) = (i[0], i[1]);
        let mut acc = Vec::new();
        for k in 0..n {
            if !x.0[k].is_zero() {
                acc.push(x.0[k].mul(&metric.g(a, b).diff(chart.coord(k))));
            }
            if !metric.g(k, b).is_zero() {
                acc.push(metric.g(k, b).mul(&x.0[k].diff(chart.coord(a))));
            }
            if !metric.g(a, k).is_zero() {
                acc.push(metric.g(a, k).mul(&x.0[k].diff(chart.coord(b))));
            }
        }
        acc.into_iter().sum()
    })
}

fn require_symmetric(a: &Tensor) -> Result<(), GeometryError> {
    if a.rank() != 2 || !a.is_symmetric() {
        return Err(GeometryError::Asymmetric("expected a symmetric (0,2) tensor".into()));
    }
    Ok(())
}

/// `(∇_X A)(Y,Z) - (∇_Y A)(X,Z)`.
pub fn codazzi_defect(a: &Tensor, bundle: &CurvatureBundle) -> Result<Tensor, GeometryError> {
    require_symmetric(a)?;
    let na = bundle.covariant_derivative(a);
    Ok(Tensor::covariant(a.dim(), 3, |i| na.get(&[i[0], i[1], i[2]]).sub(na.get(&[i[1], i[0], i[2]]))))
}

/// `(∇_X A)(Y,Z) + (∇_Y A)(Z,X) + (∇_Z A)(X,Y)`.
pub fn cyclic_parallel_defect(a: &Tensor, bundle: &CurvatureBundle) -> Result<Tensor, GeometryError> {
    require_symmetric(a)?;
    let na = bundle.covariant_derivative(a);
    Ok(Tensor::covariant(a.dim(), 3, |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        na.get(&[x, y, z]).add(na.get(&[y, z, x])).add(na.get(&[z, x, y]))
    }))
}

/// `(∇_X S)(Y,Z) - α(X)S(Y,Z) - β(X)S(Y,Z)`.
pub fn ricci_recurrence_defect(bundle: &CurvatureBundle, alpha: &OneForm, beta: &OneForm) -> Tensor {
    let ns = bundle.covariant_derivative(bundle.ricci());
    let s = bundle.ricci();
    Tensor::covariant(bundle.dim(), 3, |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        ns.get(&[x, y, z]).sub(&alpha.0[x].add(&beta.0[x]).mul(s.at(y, z)))
    })
}

/// `(∇_X S)(Y,Z) - π(Y)S(X,Z) - π(Z)S(X,Y)`.
pub fn semi_pseudo_defect(bundle: &CurvatureBundle, pi: &OneForm) -> Tensor {
    let ns = bundle.covariant_derivative(bundle.ricci());
    let s = bundle.ricci();
    Tensor::covariant(bundle.dim(), 3, |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        ns.get(&[x, y, z]).sub(&pi.0[y].mul(s.at(x, z))).sub(&pi.0[z].mul(s.at(x, y)))
    })
}

/// What a vector field's covariant derivative says about it.
#[derive(Clone, Debug)]
pub struct VectorCharacter {
    /// `(∇_a U)^b`.
    pub nabla: Tensor,
    pub parallel: bool,
    /// `ρ` with `∇_X U = ρX`.
    pub concircular: Option<Expr>,
    /// Concircular with a nonzero constant `ρ`.
    pub concurrent: bool,
    /// `φ` with `(∇_X ω)(Y) = φ(X)ω(Y)` for the dual form `ω`.
    pub recurrent: Option<OneForm>,
    /// Constant `μ` with `∇U♭ = μS`, when `μ` is nonzero.
    pub phi_ric: Option<Expr>,
}

impl VectorCharacter {
    /// Most specific label that applies.
    pub fn label(&self) -> &'static str {
        if self.parallel {
            "parallel"
        } else if self.concurrent {
            "concurrent"
        } else if self.concircular.is_some() {
            "concircular"
        } else if self.phi_ric.is_some() {
            "proper phi(Ric)"
        } else if self.recurrent.is_some() {
            "recurrent"
        } else {
            "none of the listed characters"
        }
    }
}

fn is_constant_on(e: &Expr, metric: &Metric) -> bool {
    metric.chart().coords().iter().all(|c| !e.depends_on(c))
}

/// Solve `t = f ⊗ w` style proportionality: find `c` with `t_i = c * s_i` for all i.
fn proportional(t: &[Expr], s: &[Expr]) -> Option<Expr> {
    let k = s.iter().position(|e| !is_zero(e))?;
    let c = simplify(&t[k].div(&s[k]).ok()?);
    t.iter().zip(s).all(|(a, b)| is_zero(&a.sub(&c.mul(b)))).then_some(c)
}

pub fn vector_field_character(bundle: &CurvatureBundle, u: &VectorField) -> Result<VectorCharacter, GeometryError> {
    let n = bundle.dim();
    let metric = bundle.metric();
    if u.is_zero() {
        return Err(GeometryError::ZeroField);
    }
    let nabla = bundle.covariant_derivative_vector(u);
    let parallel = nabla.is_zero();
    let flat_nabla: Vec<Expr> = nabla.components().to_vec();
    let delta: Vec<Expr> =
        (0..n * n).map(|k| if k / n == k % n { Expr::one() } else { Expr::zero() }).collect();
    let concircular = if parallel { Some(Expr::zero()) } else { proportional(&flat_nabla, &delta) };
    let concurrent = concircular.as_ref().is_some_and(|r| !r.is_zero() && is_constant_on(r, metric));

    let w = metric.flat(u);
    let nw = bundle.covariant_derivative_form(&w);
    let recurrent = recurrence_form(&nw, &w);

    let phi_ric = if bundle.ricci().is_zero() {
        None
    } else {
        proportional(nw.components(), bundle.ricci().components())
            .filter(|mu| !mu.is_zero() && is_constant_on(mu, metric))
    };
    Ok(VectorCharacter { nabla, parallel, concircular, concurrent, recurrent, phi_ric })
}

/// `φ` with `(∇_a ω)_b = φ_a ω_b`, if one exists and is nonzero.
fn recurrence_form(nw: &Tensor, w: &OneForm) -> Option<OneForm> {
    let n = w.0.len();
    let j = w.0.iter().position(|e| !is_zero(e))?;
    let phi: Vec<Expr> = (0..n).map(|a| simplify(&nw.at(a, j).div(&w.0[j]).expect("nonzero"))).collect();
    let ok = (0..n).all(|a| (0..n).all(|b| is_zero(&nw.at(a, b).sub(&phi[a].mul(&w.0[b])))));
    let phi = OneForm(phi);
    (ok && !phi.is_zero()).then_some(phi)
}
