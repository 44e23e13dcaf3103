//! Pointwise tensor algebra: Kulkarni-Nomizu products, curvature-type
//! contractions, and sectional curvature of algebraic curvature tensors.

use crate::symexpr::{is_zero, simplify, Expr};

use super::{eval_covariant, GeometryError, Metric, Slot, Tensor, VectorField};

/// `(α∧β)(X,Y,Z,W) = α(Y,Z)β(X,W) + α(X,W)β(Y,Z) - α(X,Z)β(Y,W) - α(Y,W)β(X,Z)`.
pub fn kulkarni_nomizu(a: &Tensor, b: &Tensor) -> Tensor {
    let n = a.dim();
    Tensor::from_fn_par(n, &[Slot::Co; 4], |i| {
        let (x, y, z, w) = (i[0], i[1], i[2], i[3]);
        let t = |p: &Tensor, i: usize, j: usize, q: &Tensor, k: usize, l: usize| {
            let (u, v) = (p.at(i, j), q.at(k, l));
            if u.is_zero() || v.is_zero() {
                Expr::zero()
            } else {
                u.mul(v)
            }
        };
        t(a, y, z, b, x, w).add(&t(a, x, w, b, y, z)).sub(&t(a, x, z, b, y, w)).sub(&t(a, y, w, b, x, z))
    })
}

/// Checked variant rejecting asymmetric inputs.
pub fn kulkarni_nomizu_checked(a: &Tensor, b: &Tensor) -> Result<Tensor, GeometryError> {
    for (t, name) in [(a, "first"), (b, "second")] {
        if !t.is_symmetric() {
            return Err(GeometryError::Asymmetric(format!("{name} factor of the Kulkarni-Nomizu product")));
        }
    }
    Ok(kulkarni_nomizu(a, b))
}

/// `G(X,Y,Z,W) = g(Y,Z)g(X,W) - g(X,Z)g(Y,W)`.
pub fn g_tensor(metric: &Metric) -> Tensor {
    let n = metric.dim();
    Tensor::from_fn(n, &[Slot::Co; 4], |i| {
        let (x, y, z, w) = (i[0], i[1], i[2], i[3]);
        metric.g(y, z).mul(metric.g(x, w)).sub(&metric.g(x, z).mul(metric.g(y, w)))
    })
}

/// Ricci-type contraction `S(Y,Z) = g^{ad} R(e_a,Y,Z,e_d)` of a curvature form.
pub fn contract(r: &Tensor, metric: &Metric) -> Tensor {
    let n = metric.dim();
    Tensor::covariant(n, 2, |i| {
        let mut acc = Vec::new();
        for a in 0..n {
            for d in 0..n {
                let g = metric.ginv(a, d);
                if !g.is_zero() {
                    let v = r.get(&[a, i[0], i[1], d]);
                    if !v.is_zero() {
                        acc.push(g.mul(v));
                    }
                }
            }
        }
        acc.into_iter().sum()
    })
}

/// `R - (S∧g)/(n-2) + r G/((n-1)(n-2))` for any curvature form `R` with
/// contraction `S` and trace `r`.
pub fn algebraic_weyl(r4: &Tensor, s: &Tensor, r: &Expr, metric: &Metric) -> Tensor {
    let n = metric.dim() as i64;
    let sg = kulkarni_nomizu(s, &metric.tensor());
    let gt = g_tensor(metric);
    let c1 = Expr::frac(-1, n - 2);
    let c2 = r.mul(&Expr::frac(1, (n - 1) * (n - 2)));
    Tensor::from_fn_par(metric.dim(), &[Slot::Co; 4], |i| r4.get(i).add(&sg.get(i).mul(&c1)).add(&gt.get(i).mul(&c2)))
}

/// Weyl tensor of an algebraic curvature form, contracting it first.
pub fn weyl_of(r4: &Tensor, metric: &Metric) -> Tensor {
    let s = contract(r4, metric);
    let r = metric.trace(&s);
    algebraic_weyl(r4, &s, &r, metric)
}

/// Curvature of a conformally flat metric in terms of its Ricci tensor:
/// `(S∧g)/(n-2) - r G/((n-1)(n-2))`.
pub fn conformally_flat_curvature(s: &Tensor, r: &Expr, metric: &Metric) -> Tensor {
    let n = metric.dim() as i64;
    let sg = kulkarni_nomizu(s, &metric.tensor());
    let gt = g_tensor(metric);
    let c1 = Expr::frac(1, n - 2);
    let c2 = r.mul(&Expr::frac(-1, (n - 1) * (n - 2)));
    Tensor::from_fn_par(metric.dim(), &[Slot::Co; 4], |i| sg.get(i).mul(&c1).add(&gt.get(i).mul(&c2)))
}

/// Sectional curvature of a curvature form on the plane spanned by `x, y`.
/// A plane that is degenerate (symbolically or at the sample point) is an error.
pub fn sectional(r4: &Tensor, metric: &Metric, x: &VectorField, y: &VectorField) -> Result<Expr, GeometryError> {
    let gxx = metric.inner(x, x);
    let gyy = metric.inner(y, y);
    let gxy = metric.inner(x, y);
    let den = simplify(&gxx.mul(&gyy).sub(&gxy.mul(&gxy)));
    let at_sample = metric.chart().eval_sample(&den).unwrap_or(0.0);
    if is_zero(&den) || at_sample.abs() < 1e-12 {
        return Err(GeometryError::DegeneratePlane);
    }
    let num = eval_covariant(r4, &[x, y, y, x]);
    Ok(simplify(&num.div(&den).map_err(|_| GeometryError::DegeneratePlane)?))
}
