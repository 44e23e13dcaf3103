use crate::symexpr::{simplify, Expr};

use super::algebra::{g_tensor, kulkarni_nomizu};
use super::{index_tuples, GeometryError, Metric, OneForm, Slot, Tensor, VectorField};

/// Levi-Civita connection coefficients `Γ^a_{bc}`.
pub fn christoffel(metric: &Metric) -> Tensor {
    let n = metric.dim();
    let chart = metric.chart();
    // dg[c][a][b] = ∂_c g_ab
    let dg: Vec<Vec<Vec<Expr>>> = (0..n)
        .map(|c| (0..n).map(|a| (0..n).map(|b| metric.g(a, b).diff(chart.coord(c))).collect()).collect())
        .collect();
    let half = Expr::frac(1, 2);
    let mut out = Tensor::zeros(n, &[Slot::Contra, Slot::Co, Slot::Co]);
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let mut acc = Vec::new();
                for d in 0..n {
                    if metric.ginv(a, d).is_zero() {
                        continue;
                    }
                    let s = dg[b][d][c].add(&dg[c][d][b]).sub(&dg[d][b][c]);
                    if !s.is_zero() {
                        acc.push(metric.ginv(a, d).mul(&s));
                    }
                }
                let v = simplify(&acc.into_iter().sum::<Expr>().mul(&half));
                out.set(&[a, b, c], v.clone());
                out.set(&[a, c, b], v);
            }
        }
    }
    out
}

/// Metric with its connection and curvature, computed once.
///
/// Sign convention: `R^a_{bcd} = ∂_c Γ^a_{db} - ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} - Γ^a_{de} Γ^e_{cb}`,
/// `R_{abcd} = g_{ae} R^e_{bcd}`, `S_{bd} = R^a_{bad}`. The round sphere of
/// radius `R` has `R_{θφθφ} = R² sin²θ`.
#[derive(Clone, Debug)]
pub struct CurvatureBundle {
    metric: Metric,
    gamma: Tensor,
    riemann_up: Tensor,
    riemann: Tensor,
    ricci: Tensor,
    scalar: Expr,
    ricci_op: Tensor,
}

impl CurvatureBundle {
    pub fn new(metric: Metric) -> Self {
        let n = metric.dim();
        let gamma = christoffel(&metric);
        let chart = metric.chart().clone();
        let mut up = Tensor::zeros(n, &[Slot::Contra, Slot::Co, Slot::Co, Slot::Co]);
        let pairs: Vec<(usize, usize, usize, usize)> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).flat_map(move |c| (c + 1..n).map(move |d| (a, b, c, d)))))
            .collect();
        let vals: Vec<Expr> = {
            use rayon::prelude::*;
            pairs
                .par_iter()
                .map(|&(a, b, c, d)| {
                    let mut acc = vec![gamma.get(&[a, d, b]).diff(chart.coord(c)), gamma.get(&[a, c, b]).diff(chart.coord(d)).neg()];
                    for e in 0..n {
                        let (p, q) = (gamma.get(&[a, c, e]), gamma.get(&[e, d, b]));
                        if !p.is_zero() && !q.is_zero() {
                            acc.push(p.mul(q));
                        }
                        let (p, q) = (gamma.get(&[a, d, e]), gamma.get(&[e, c, b]));
                        if !p.is_zero() && !q.is_zero() {
                            acc.push(p.mul(q).neg());
                        }
                    }
                    simplify(&acc.into_iter().sum())
                })
                .collect()
        };
        for (&(a, b, c, d), v) in pairs.iter().zip(vals) {
            up.set(&[a, b, d, c], v.neg());
            up.set(&[a, b, c, d], v);
        }
        let riemann = Tensor::from_fn_par(n, &[Slot::Co; 4], |i| {
            (0..n)
                .filter(|&e| !metric.g(i[0], e).is_zero())
                .map(|e| metric.g(i[0], e).mul(up.get(&[e, i[1], i[2], i[3]])))
                .sum()
        });
        let ricci = Tensor::covariant(n, 2, |i| (0..n).map(|a| up.get(&[a, i[0], a, i[1]]).clone()).sum());
        let scalar = metric.trace(&ricci);
        let ricci_op = metric.raise_first(&ricci);
        CurvatureBundle { metric, gamma, riemann_up: up, riemann, ricci, scalar, ricci_op }
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn christoffel(&self) -> &Tensor {
        &self.gamma
    }

    pub fn riemann_up(&self) -> &Tensor {
        &self.riemann_up
    }

    /// `R_{abcd} = g_{ae} R^e_{bcd}`.
    pub fn riemann(&self) -> &Tensor {
        &self.riemann
    }

    /// Curvature as a function of vectors, `R(X,Y,Z,W) = g(R(X,Y)Z, W)`,
    /// so that constant curvature `K` reads `R = K·G`. In components this is
    /// `-R_{abcd}`.
    pub fn curvature_form(&self) -> Tensor {
        self.riemann.scale(&Expr::int(-1))
    }

    pub fn ricci(&self) -> &Tensor {
        &self.ricci
    }

    pub fn scalar(&self) -> &Expr {
        &self.scalar
    }

    /// Ricci operator `Q^a_b = g^{ac} S_cb`.
    pub fn ricci_operator(&self) -> &Tensor {
        &self.ricci_op
    }

    /// Coordinate gradient of a scalar.
    pub fn gradient(&self, f: &Expr) -> OneForm {
        let chart = self.metric.chart();
        OneForm((0..self.dim()).map(|i| f.diff(chart.coord(i))).collect())
    }

    /// Levi-Civita covariant derivative; the derivative index comes first.
    pub fn covariant_derivative(&self, t: &Tensor) -> Tensor {
        let n = self.dim();
        let chart = self.metric.chart();
        let mut slots = vec![Slot::Co];
        slots.extend_from_slice(t.slots());
        let ts = t.slots().to_vec();
        Tensor::from_fn_par(n, &slots, |idx| {
            let m = idx[0];
            let rest = &idx[1..];
            let mut acc = vec![t.get(rest).diff(chart.coord(m))];
            let mut probe = rest.to_vec();
            for (p, slot) in ts.iter().enumerate() {
                let orig = rest[p];
                for e in 0..n {
                    let coef = match slot {
                        Slot::Contra => self.gamma.get(&[orig, m, e]),
                        Slot::Co => self.gamma.get(&[e, m, orig]),
                    };
                    if coef.is_zero() {
                        continue;
                    }
                    probe[p] = e;
                    let v = t.get(&probe);
                    if !v.is_zero() {
                        let term = coef.mul(v);
                        acc.push(if *slot == Slot::Co { term.neg() } else { term });
                    }
                }
                probe[p] = orig;
            }
            acc.into_iter().sum()
        })
    }

    /// Covariant derivative of a 1-form, `(∇_a ω)_b`.
    pub fn covariant_derivative_form(&self, w: &OneForm) -> Tensor {
        let n = self.dim();
        let t = Tensor::covariant(n, 1, |i| w.0[i[0]].clone());
        self.covariant_derivative(&t)
    }

    /// Covariant derivative of a vector field, `(∇_a U)^b`.
    pub fn covariant_derivative_vector(&self, u: &VectorField) -> Tensor {
        let n = self.dim();
        let t = Tensor::from_fn(n, &[Slot::Contra], |i| u.0[i[0]].clone());
        self.covariant_derivative(&t)
    }

    /// Divergence of a covariant tensor on its last slot:
    /// `(div T)_{a..} = g^{ij} (∇_i T)_{a.. j}`.
    pub fn divergence(&self, t: &Tensor) -> Result<Tensor, GeometryError> {
        if t.rank() == 0 || t.slots().iter().any(|s| *s != Slot::Co) {
            return Err(GeometryError::Shape("divergence needs a covariant tensor of rank >= 1".into()));
        }
        let n = self.dim();
        let nab = self.covariant_derivative(t);
        let k = t.rank();
        let g = &self.metric;
        Ok(Tensor::from_fn_par(n, &vec![Slot::Co; k - 1], |idx| {
            let mut acc = Vec::new();
            let mut full = vec![0; k + 1];
            full[1..k].copy_from_slice(idx);
            for i in 0..n {
                for j in 0..n {
                    if g.ginv(i, j).is_zero() {
                        continue;
                    }
                    full[0] = i;
                    full[k] = j;
                    let v = nab.get(&full);
                    if !v.is_zero() {
                        acc.push(g.ginv(i, j).mul(v));
                    }
                }
            }
            acc.into_iter().sum()
        }))
    }

    /// Weyl tensor in the curvature-form convention:
    /// `C = R - (S∧g)/(n-2) + r G/((n-1)(n-2))`.
    pub fn weyl(&self) -> Result<Tensor, GeometryError> {
        let n = self.dim();
        if n <= 2 {
            return Err(GeometryError::Dimension { need: 3, got: n });
        }
        Ok(super::algebra::algebraic_weyl(&self.curvature_form(), &self.ricci, &self.scalar, &self.metric))
    }

    /// Cotton tensor
    /// `C(X,Y,Z) = (∇_Y S)(X,Z) - (∇_X S)(Y,Z) - (dr(Y) g(X,Z) - dr(X) g(Y,Z)) / (2(n-1))`,
    /// normalized so that `div C_weyl = -(n-3)/(n-2) C`.
    pub fn cotton(&self) -> Result<Tensor, GeometryError> {
        let n = self.dim();
        if n < 3 {
            return Err(GeometryError::Dimension { need: 3, got: n });
        }
        let ns = self.covariant_derivative(&self.ricci);
        let dr = self.gradient(&self.scalar);
        let k = Expr::frac(1, 2 * (n as i64 - 1));
        let g = &self.metric;
        Ok(Tensor::from_fn_par(n, &[Slot::Co; 3], |i| {
            let (x, y, z) = (i[0], i[1], i[2]);
            let a = ns.get(&[y, x, z]).sub(ns.get(&[x, y, z]));
            let b = dr.0[y].mul(g.g(x, z)).sub(&dr.0[x].mul(g.g(y, z)));
            a.sub(&b.mul(&k))
        }))
    }

    /// Divergence of the Weyl tensor on its last slot.
    pub fn div_weyl(&self) -> Result<Tensor, GeometryError> {
        if self.dim() < 3 {
            return Err(GeometryError::Dimension { need: 3, got: self.dim() });
        }
        self.divergence(&self.weyl()?)
    }

    /// `K(X,Y) = R(X,Y,Y,X) / (g(X,X)g(Y,Y) - g(X,Y)²)`.
    pub fn sectional_curvature(&self, x: &VectorField, y: &VectorField) -> Result<Expr, GeometryError> {
        super::algebra::sectional(&self.curvature_form(), &self.metric, x, y)
    }

    /// `g^{ab} (∇_a S)_{bc} - ½ ∂_c r`, zero by the contracted Bianchi identity.
    pub fn contracted_bianchi_defect(&self) -> OneForm {
        let n = self.dim();
        let ns = self.covariant_derivative(&self.ricci);
        let dr = self.gradient(&self.scalar);
        let g = &self.metric;
        OneForm(
            (0..n)
                .map(|c| {
                    let mut acc = vec![dr.0[c].mul(&Expr::frac(-1, 2))];
                    for a in 0..n {
                        for b in 0..n {
                            if !g.ginv(a, b).is_zero() {
                                acc.push(g.ginv(a, b).mul(ns.get(&[a, b, c])));
                            }
                        }
                    }
                    simplify(&acc.into_iter().sum())
                })
                .collect(),
        )
    }

    /// Laplace-Beltrami operator on scalars.
    pub fn laplacian(&self, f: &Expr) -> Expr {
        let n = self.dim();
        let chart = self.metric.chart();
        let df = self.gradient(f);
        let mut acc = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let gij = self.metric.ginv(i, j);
                if gij.is_zero() {
                    continue;
                }
                let mut h = df.0[j].diff(chart.coord(i));
                for k in 0..n {
                    let gam = self.gamma.get(&[k, i, j]);
                    if !gam.is_zero() {
                        h = h.sub(&gam.mul(&df.0[k]));
                    }
                }
                acc.push(gij.mul(&h));
            }
        }
        simplify(&acc.into_iter().sum())
    }

    /// `|grad f|² = g^{ij} ∂_i f ∂_j f`.
    pub fn gradient_norm2(&self, f: &Expr) -> Expr {
        let df = self.gradient(f);
        let v = self.metric.sharp(&df);
        df.apply(&v)
    }

    /// `S^k(X,Y) = g(Q^k X, Y)`.
    pub fn ricci_power(&self, k: usize) -> Result<Tensor, GeometryError> {
        if k < 1 {
            return Err(GeometryError::Shape("ricci_power needs k >= 1".into()));
        }
        let n = self.dim();
        let mut cur = self.ricci.clone();
        for _ in 1..k {
            // S^{j+1}_{ab} = S^j_{ac} Q^c_b
            cur = Tensor::covariant(n, 2, |i| {
                (0..n)
                    .filter(|&c| !cur.at(i[0], c).is_zero() && !self.ricci_op.at(c, i[1]).is_zero())
                    .map(|c| cur.at(i[0], c).mul(self.ricci_op.at(c, i[1])))
                    .sum()
            });
        }
        Ok(cur)
    }

    /// `S ∧ g` and `G` shorthands used by several callers.
    pub fn ricci_wedge_g(&self) -> Tensor {
        kulkarni_nomizu(&self.ricci, &self.metric.tensor())
    }

    pub fn g_tensor(&self) -> Tensor {
        g_tensor(&self.metric)
    }
}

/// All index tuples where two tensors of equal shape differ.
pub fn differing(a: &Tensor, b: &Tensor) -> Vec<Vec<usize>> {
    index_tuples(a.dim(), a.rank())
        .filter(|i| !crate::symexpr::is_zero(&a.get(i).sub(b.get(i))))
        .collect()
}
