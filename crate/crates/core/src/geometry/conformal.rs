//! Conformal and conharmonic mappings.

use crate::symexpr::{simplify, Expr};

use super::{CurvatureBundle, GeometryError, Metric};

/// `e^{2σ} g`.
pub fn conformal_rescale(metric: &Metric, sigma: &Expr) -> Result<Metric, GeometryError> {
    let f = sigma.scale(&crate::symexpr::q(2, 1)).exp();
    let g = metric.matrix().iter().map(|row| row.iter().map(|e| simplify(&e.mul(&f))).collect()).collect();
    Metric::new(metric.chart().clone(), g)
}

/// `Δσ + (n-2)/2 |grad σ|²`; it vanishes exactly for conharmonic maps.
pub fn conharmonic_defect(bundle: &CurvatureBundle, sigma: &Expr) -> Expr {
    let n = bundle.dim() as i64;
    simplify(&bundle.laplacian(sigma).add(&bundle.gradient_norm2(sigma).mul(&Expr::frac(n - 2, 2))))
}

/// `μ = ((2-n)(n-1)|grad σ|² - r) / (2(n-1) r)`.
pub fn mu_formula(n: usize, grad_norm2: &Expr, r: &Expr) -> Result<Expr, GeometryError> {
    let n = n as i64;
    if simplify(r).is_zero() {
        return Err(GeometryError::Domain("μ needs nonzero scalar curvature".into()));
    }
    let num = grad_norm2.mul(&Expr::int((2 - n) * (n - 1))).sub(r);
    let den = r.mul(&Expr::int(2 * (n - 1)));
    Ok(simplify(&num.div(&den).expect("nonzero r")))
}

/// `ρ = ((n-2)(1-n) Δ₁σ - b₂₂ - b₃₃ - b₄₄) / ((n+2)(n-1))` with `Δ₁σ = |grad σ|²`.
pub fn rho_formula(n: usize, beltrami1: &Expr, b22: &Expr, b33: &Expr, b44: &Expr) -> Expr {
    let n = n as i64;
    let num = beltrami1.mul(&Expr::int((n - 2) * (1 - n))).sub(b22).sub(b33).sub(b44);
    simplify(&num.scale(&crate::symexpr::q(1, (n + 2) * (n - 1))))
}

/// Both constants for a given σ on a bundle, with `b = [b22, b33, b44]`.
pub fn conformal_mapping_constants(
    bundle: &CurvatureBundle,
    sigma: &Expr,
    b: [&Expr; 3],
) -> Result<(Expr, Expr), GeometryError> {
    let n = bundle.dim();
    if n <= 2 {
        return Err(GeometryError::Dimension { need: 3, got: n });
    }
    let g2 = bundle.gradient_norm2(sigma);
    let mu = mu_formula(n, &g2, bundle.scalar())?;
    let rho = rho_formula(n, &g2, b[0], b[1], b[2]);
    Ok((mu, rho))
}

/// Scalar transformation law under a conharmonic map: `ã = e^{-2σ} a`.
pub fn conharmonic_scalar_law(a: &Expr, sigma: &Expr) -> Expr {
    simplify(&a.mul(&sigma.scale(&crate::symexpr::q(-2, 1)).exp()))
}
