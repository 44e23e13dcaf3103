//! Stress-energy of two viscous fluids with heat flux and the Ricci tensor
//! the field equations force.

use crate::coqe::{CoQEStructure, CoqeError};
use crate::geometry::{CurvatureBundle, Metric, OneForm, Tensor};
use crate::symexpr::{is_zero, simplify, Expr};

use super::RelativityError;

/// One viscous fluid with heat flux.
#[derive(Clone, Debug, PartialEq)]
pub struct FluidComponent {
    /// Energy density `σ`.
    pub sigma: Expr,
    /// Isotropic pressure.
    pub p: Expr,
    /// Shear viscosity coefficient `ς`.
    pub zeta: Expr,
    /// Shear tensor.
    pub e: Tensor,
    /// Velocity 1-form.
    pub omega: OneForm,
    /// Heat-flux 1-form.
    pub q: OneForm,
}

impl FluidComponent {
    pub fn new(sigma: Expr, p: Expr, zeta: Expr, e: Tensor, omega: OneForm, q: OneForm) -> Result<Self, RelativityError> {
        let n = e.dim();
        if e.rank() != 2 || omega.0.len() != n || q.0.len() != n {
            return Err(RelativityError::Shape(format!("fluid fields must all live on a {n}-chart")));
        }
        if !e.is_symmetric() {
            return Err(RelativityError::Asymmetric("shear tensor".into()));
        }
        Ok(FluidComponent { sigma, p, zeta, e, omega, q })
    }

    /// No matter at all.
    pub fn vacuum(n: usize) -> Self {
        FluidComponent {
            sigma: Expr::zero(),
            p: Expr::zero(),
            zeta: Expr::zero(),
            e: Tensor::covariant(n, 2, |_| Expr::zero()),
            omega: OneForm::zero(n),
            q: OneForm::zero(n),
        }
    }

    /// No shear, no heat flux.
    pub fn perfect(sigma: Expr, p: Expr, omega: OneForm) -> Self {
        let n = omega.0.len();
        FluidComponent { sigma, p, omega, ..Self::vacuum(n) }
    }

    fn dim(&self) -> usize {
        self.e.dim()
    }
}

/// `κ` multiplies `T` and `Λ` multiplies `g` in the field equation.
#[derive(Clone, Debug, PartialEq)]
pub struct GravConstants {
    pub kappa: Expr,
    pub lambda: Expr,
}

impl GravConstants {
    pub fn new(kappa: Expr, lambda: Expr) -> Result<Self, RelativityError> {
        if is_zero(&kappa) {
            return Err(RelativityError::KappaZero);
        }
        Ok(GravConstants { kappa, lambda })
    }
}

fn sym_outer(u: &OneForm, v: &OneForm) -> Tensor {
    u.outer(v).add(&v.outer(u))
}

fn check_pair(r: &FluidComponent, m: &FluidComponent, metric: &Metric) -> Result<(), RelativityError> {
    let n = metric.dim();
    for (f, name) in [(r, "radiation"), (m, "matter")] {
        if f.dim() != n || f.omega.0.len() != n || f.q.0.len() != n {
            return Err(RelativityError::Shape(format!("{name} fluid does not match the {n}-chart")));
        }
        if !f.e.is_symmetric() {
            return Err(RelativityError::Asymmetric(format!("{name} shear tensor")));
        }
    }
    Ok(())
}

/// `T = p g + (σ+p) ω⊗ω − ς e + q⊗ω + ω⊗q`, summed over both fluids.
pub fn stress_energy(r: &FluidComponent, m: &FluidComponent, metric: &Metric) -> Result<Tensor, RelativityError> {
    check_pair(r, m, metric)?;
    let n = metric.dim();
    let g = metric.tensor();
    let one = |f: &FluidComponent| -> Tensor {
        let flow = f.omega.outer(&f.omega).scale(&f.sigma.add(&f.p));
        let heat = sym_outer(&f.q, &f.omega);
        g.scale(&f.p).add(&flow).sub(&f.e.scale(&f.zeta)).add(&heat)
    };
    let t = one(r).add(&one(m));
    debug_assert_eq!(t.dim(), n);
    Ok(t)
}

/// `S − (r/2) g + Λ g − κ T` for the bundle's curvature.
pub fn efe_residual(bundle: &CurvatureBundle, t: &Tensor, consts: &GravConstants) -> Tensor {
    efe_residual_for(bundle.ricci(), bundle.scalar(), bundle.metric(), t, consts)
}

/// Field-equation residual for an explicit Ricci tensor and scalar.
pub fn efe_residual_for(ricci: &Tensor, r: &Expr, metric: &Metric, t: &Tensor, consts: &GravConstants) -> Tensor {
    let coef = consts.lambda.sub(&r.mul(&Expr::frac(1, 2)));
    Tensor::covariant(metric.dim(), 2, |i| {
        let (x, y) = (i[0], i[1]);
        ricci.at(x, y).add(&coef.mul(metric.g(x, y))).sub(&consts.kappa.mul(t.at(x, y)))
    })
}

/// Which matter terms play the associated scalars when `ω¹ = ω^r`,
/// `ω² = ω^m`, `ω³ = q^r`, `ω⁴ = q^m`, `d₁ = e_r`, `d₂ = e_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct FluidIdentification {
    /// `κp_r + κp_m − Λ + r/2`.
    pub a: Expr,
    /// `κ(σ_r + p_r)`.
    pub b11: Expr,
    /// `κ(σ_m + p_m)`.
    pub b22: Expr,
    /// `κ`, from the symmetrized `q^r ω^r`.
    pub b13: Expr,
    /// `κ`, from the symmetrized `q^m ω^m`.
    pub b24: Expr,
    /// `−κς_r`.
    pub c1: Expr,
    /// `−κς_m`.
    pub c2: Expr,
}

impl FluidIdentification {
    pub fn terms(&self) -> Vec<(&'static str, &Expr)> {
        vec![
            ("a", &self.a),
            ("b11", &self.b11),
            ("b22", &self.b22),
            ("b13", &self.b13),
            ("b24", &self.b24),
            ("c1", &self.c1),
            ("c2", &self.c2),
        ]
    }

    /// The decomposition read off the fluids. Fails when a velocity or
    /// heat-flux form vanishes, since generators must be nonzero.
    pub fn structure(&self, r: &FluidComponent, m: &FluidComponent) -> Result<CoQEStructure, CoqeError> {
        let mut b: [[Expr; 4]; 4] = Default::default();
        b[0][0] = self.b11.clone();
        b[1][1] = self.b22.clone();
        b[0][2] = self.b13.clone();
        b[2][0] = self.b13.clone();
        b[1][3] = self.b24.clone();
        b[3][1] = self.b24.clone();
        let omega = [r.omega.clone(), m.omega.clone(), r.q.clone(), m.q.clone()];
        CoQEStructure::new(self.a.clone(), b, self.c1.clone(), self.c2.clone(), omega, r.e.clone(), m.e.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FluidRicci {
    pub ricci: Tensor,
    pub identification: FluidIdentification,
}

/// The Ricci tensor solving the field equations for the given matter, term
/// by term:
/// `S = (κp_r+κp_m−Λ+r/2) g + κ(σ_r+p_r) ω^rω^r + κ(σ_m+p_m) ω^mω^m
///      + κ(q^rω^r + ω^rq^r) + κ(q^mω^m + ω^mq^m) − κς_r e_r − κς_m e_m`.
pub fn ricci_from_fluids(
    r: &FluidComponent,
    m: &FluidComponent,
    consts: &GravConstants,
    metric: &Metric,
    scalar: &Expr,
) -> Result<FluidRicci, RelativityError> {
    check_pair(r, m, metric)?;
    let k = &consts.kappa;
    let id = FluidIdentification {
        a: simplify(&k.mul(&r.p).add(&k.mul(&m.p)).sub(&consts.lambda).add(&scalar.mul(&Expr::frac(1, 2)))),
        b11: simplify(&k.mul(&r.sigma.add(&r.p))),
        b22: simplify(&k.mul(&m.sigma.add(&m.p))),
        b13: k.clone(),
        b24: k.clone(),
        c1: simplify(&k.mul(&r.zeta).neg()),
        c2: simplify(&k.mul(&m.zeta).neg()),
    };
    let terms: Vec<(&Expr, Tensor)> = vec![
        (&id.a, metric.tensor()),
        (&id.b11, r.omega.outer(&r.omega)),
        (&id.b22, m.omega.outer(&m.omega)),
        (&id.b13, sym_outer(&r.q, &r.omega)),
        (&id.b24, sym_outer(&m.q, &m.omega)),
        (&id.c1, r.e.clone()),
        (&id.c2, m.e.clone()),
    ];
    let ricci = Tensor::covariant(metric.dim(), 2, |i| {
        terms
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, t)| c.mul(t.at(i[0], i[1])))
            .sum()
    });
    Ok(FluidRicci { ricci, identification: id })
}

/// Energy densities from the associated scalars, taken at face value:
/// `σ_r = (a + b₁₁ − b₂₂ − b₃₃ − b₄₄ + 2Λ)/(2κ) − (2p_r + p_m)` and the
/// same with `r ↔ m`, `b₁₁ ↔ b₂₂`.
pub fn energy_densities(
    st: &CoQEStructure,
    consts: &GravConstants,
    p_r: &Expr,
    p_m: &Expr,
) -> Result<(Expr, Expr), RelativityError> {
    if is_zero(&consts.kappa) {
        return Err(RelativityError::KappaZero);
    }
    let two_k = consts.kappa.mul(&Expr::int(2));
    let two_l = consts.lambda.mul(&Expr::int(2));
    let b = |i: usize| &st.b[i][i];
    let rest = b(2).add(b(3));
    let one = |own: &Expr, other: &Expr, p_own: &Expr, p_other: &Expr| -> Result<Expr, RelativityError> {
        let num = st.a.add(own).sub(other).sub(&rest).add(&two_l);
        Ok(simplify(&num.div(&two_k)?.sub(&p_own.mul(&Expr::int(2)).add(p_other))))
    };
    Ok((one(b(0), b(1), p_r, p_m)?, one(b(1), b(0), p_m, p_r)?))
}

/// Printed energy densities next to the ones implied by `b₁₁ = κ(σ_r+p_r)`
/// and `b₂₂ = κ(σ_m+p_m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyDensityCheck {
    pub literal: (Expr, Expr),
    pub identified: (Expr, Expr),
    pub agree: [bool; 2],
}

pub fn energy_density_consistency(
    st: &CoQEStructure,
    consts: &GravConstants,
    p_r: &Expr,
    p_m: &Expr,
) -> Result<EnergyDensityCheck, RelativityError> {
    let literal = energy_densities(st, consts, p_r, p_m)?;
    let implied = |b: &Expr, p: &Expr| -> Result<Expr, RelativityError> { Ok(simplify(&b.div(&consts.kappa)?.sub(p))) };
    let identified = (implied(&st.b[0][0], p_r)?, implied(&st.b[1][1], p_m)?);
    let agree = [is_zero(&literal.0.sub(&identified.0)), is_zero(&literal.1.sub(&identified.1))];
    Ok(EnergyDensityCheck { literal, identified, agree })
}

/// One fluid normalization condition evaluated on a metric.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizationItem {
    pub label: String,
    pub value: Expr,
    pub expected: Expr,
    pub holds: bool,
}

/// The eight velocity/heat-flux conditions accompanying the stress-energy,
/// then `g(W,W) = 1` for both velocities as a unit-generator convention
/// would demand. For the heat fluxes the two conventions coincide.
pub fn fluid_normalization(r: &FluidComponent, m: &FluidComponent, metric: &Metric) -> Vec<NormalizationItem> {
    let w_r = metric.sharp(&r.omega);
    let w_m = metric.sharp(&m.omega);
    let q_r = metric.sharp(&r.q);
    let q_m = metric.sharp(&m.q);
    let item = |label: &str, value: Expr, expected: Expr| {
        let holds = is_zero(&value.sub(&expected));
        NormalizationItem { label: label.into(), value, expected, holds }
    };
    let (one, neg, zero) = (Expr::one(), Expr::int(-1), Expr::zero());
    vec![
        item("ω^m(W_m) = -1", m.omega.apply(&w_m), neg.clone()),
        item("ω^r(W_r) = -1", r.omega.apply(&w_r), neg),
        item("q^r(Q_r) = 1", r.q.apply(&q_r), one.clone()),
        item("q^m(Q_m) = 1", m.q.apply(&q_m), one.clone()),
        item("ω^m(W_r) = 0", m.omega.apply(&w_r), zero.clone()),
        item("q^r(Q_m) = 0", r.q.apply(&q_m), zero.clone()),
        item("q^r(W_m) = 0", r.q.apply(&w_m), zero.clone()),
        item("ω^r(Q_m) = 0", r.omega.apply(&q_m), zero),
        item("unit: g(W_r,W_r) = 1", metric.inner(&w_r, &w_r), one.clone()),
        item("unit: g(W_m,W_m) = 1", metric.inner(&w_m, &w_m), one),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;

    fn minkowski() -> Metric {
        let chart = Chart::coordinates(&["t", "x", "y", "z"]).unwrap();
        Metric::diagonal(chart, vec![Expr::int(-1), Expr::one(), Expr::one(), Expr::one()]).unwrap()
    }

    fn v(s: &str) -> Expr {
        Expr::var(s)
    }

    fn symbolic_form(prefix: &str) -> OneForm {
        OneForm((0..4).map(|i| v(&format!("{prefix}{i}"))).collect())
    }

    fn symbolic_shear(prefix: &str) -> Tensor {
        Tensor::covariant(4, 2, |i| {
            let (a, b) = (i[0].min(i[1]), i[0].max(i[1]));
            v(&format!("{prefix}{a}{b}"))
        })
    }

    fn symbolic_fluid(tag: &str) -> FluidComponent {
        FluidComponent::new(
            v(&format!("s{tag}")),
            v(&format!("p{tag}")),
            v(&format!("z{tag}")),
            symbolic_shear(&format!("e{tag}")),
            symbolic_form(&format!("w{tag}")),
            symbolic_form(&format!("q{tag}")),
        )
        .unwrap()
    }

    #[test]
    fn vacuum_has_no_stress() {
        let g = minkowski();
        let t = stress_energy(&FluidComponent::vacuum(4), &FluidComponent::vacuum(4), &g).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn perfect_fluid_reduces() {
        let g = minkowski();
        let u = OneForm(vec![Expr::int(-1), Expr::zero(), Expr::zero(), Expr::zero()]);
        let f = FluidComponent::perfect(v("s"), v("p"), u.clone());
        let t = stress_energy(&f, &FluidComponent::vacuum(4), &g).unwrap();
        let expect = g.tensor().scale(&v("p")).add(&u.outer(&u).scale(&v("s").add(&v("p"))));
        assert_eq!(t, expect);
        assert_eq!(t.at(0, 0), &v("s"));
    }

    #[test]
    fn stress_energy_matches_term_loop() {
        let g = minkowski();
        let (r, m) = (symbolic_fluid("r"), symbolic_fluid("m"));
        let t = stress_energy(&r, &m, &g).unwrap();
        assert!(t.is_symmetric());
        for x in 0..4 {
            for y in x..4 {
                let mut acc = Expr::zero();
                for f in [&r, &m] {
                    let (w, q) = (&f.omega.0, &f.q.0);
                    acc = acc
                        .add(&f.p.mul(g.g(x, y)))
                        .add(&f.sigma.add(&f.p).mul(&w[x]).mul(&w[y]))
                        .sub(&f.zeta.mul(f.e.at(x, y)))
                        .add(&q[x].mul(&w[y]))
                        .add(&q[y].mul(&w[x]));
                }
                assert!(is_zero(&t.at(x, y).sub(&acc)), "({x},{y})");
            }
        }
    }

    #[test]
    fn asymmetric_shear_rejected() {
        let mut e = Tensor::covariant(4, 2, |_| Expr::zero());
        e.set(&[0, 1], Expr::one());
        let err = FluidComponent::new(v("s"), v("p"), v("z"), e, OneForm::zero(4), OneForm::zero(4));
        assert!(matches!(err, Err(RelativityError::Asymmetric(_))));
    }

    #[test]
    fn field_equation_round_trip() {
        let g = minkowski();
        let (r, m) = (symbolic_fluid("r"), symbolic_fluid("m"));
        let consts = GravConstants::new(v("kappa"), v("Lambda")).unwrap();
        let scalar = v("R");
        let fr = ricci_from_fluids(&r, &m, &consts, &g, &scalar).unwrap();
        let t = stress_energy(&r, &m, &g).unwrap();
        assert!(efe_residual_for(&fr.ricci, &scalar, &g, &t, &consts).is_zero());
        let a = v("kappa").mul(&v("pr")).add(&v("kappa").mul(&v("pm"))).sub(&v("Lambda")).add(&v("R").mul(&Expr::frac(1, 2)));
        assert_eq!(fr.identification.a, simplify(&a));
    }

    #[test]
    fn no_matter_gives_shifted_metric() {
        let g = minkowski();
        let consts = GravConstants::new(v("kappa"), v("Lambda")).unwrap();
        let vac = FluidComponent::vacuum(4);
        let fr = ricci_from_fluids(&vac, &vac, &consts, &g, &v("R")).unwrap();
        assert_eq!(fr.ricci, g.tensor().scale(&v("R").mul(&Expr::frac(1, 2)).sub(&v("Lambda"))));
    }

    #[test]
    fn identification_reproduces_ricci() {
        let g = minkowski();
        let (r, m) = (symbolic_fluid("r"), symbolic_fluid("m"));
        let consts = GravConstants::new(v("kappa"), v("Lambda")).unwrap();
        let fr = ricci_from_fluids(&r, &m, &consts, &g, &v("R")).unwrap();
        let st = fr.identification.structure(&r, &m).unwrap();
        assert_eq!(st.model(&g), fr.ricci);
    }

    fn diagonal_structure(a: Expr, bii: [Expr; 4]) -> CoQEStructure {
        let mut b: [[Expr; 4]; 4] = Default::default();
        for (i, e) in bii.into_iter().enumerate() {
            b[i][i] = e;
        }
        let z = Tensor::covariant(4, 2, |_| Expr::zero());
        let omega = std::array::from_fn(|i| OneForm::basis(4, i));
        CoQEStructure::new(a, b, Expr::zero(), Expr::zero(), omega, z.clone(), z).unwrap()
    }

    #[test]
    fn energy_densities_at_face_value() {
        let st = diagonal_structure(v("a"), [v("b11"), v("b22"), v("b33"), v("b44")]);
        let consts = GravConstants::new(v("kappa"), v("Lambda")).unwrap();
        let (sr, sm) = energy_densities(&st, &consts, &v("pr"), &v("pm")).unwrap();
        let parse = |s: &str| crate::symexpr::parse(s).unwrap();
        assert_eq!(sr, parse("(a + b11 - b22 - b33 - b44 + 2*Lambda)/(2*kappa) - (2*pr + pm)"));
        assert_eq!(sm, parse("(a + b22 - b11 - b33 - b44 + 2*Lambda)/(2*kappa) - (2*pm + pr)"));
    }

    #[test]
    fn energy_density_spot_values() {
        let consts = GravConstants::new(v("kappa"), v("Lambda")).unwrap();
        let z = Expr::zero;
        let st = diagonal_structure(v("a"), [z(), z(), z(), z()]);
        let (sr, sm) = energy_densities(&st, &consts, &z(), &z()).unwrap();
        let expect = crate::symexpr::parse("(a + 2*Lambda)/(2*kappa)").unwrap();
        assert_eq!((sr, sm), (expect.clone(), expect));

        let unit = GravConstants::new(Expr::one(), Expr::zero()).unwrap();
        let st = diagonal_structure(Expr::one(), [Expr::int(2), z(), z(), z()]);
        let (sr, _) = energy_densities(&st, &unit, &z(), &z()).unwrap();
        assert_eq!(sr, Expr::frac(3, 2));
    }

    #[test]
    fn kappa_must_be_nonzero() {
        assert_eq!(GravConstants::new(Expr::zero(), Expr::one()), Err(RelativityError::KappaZero));
        let st = diagonal_structure(Expr::one(), Default::default());
        let bad = GravConstants { kappa: Expr::zero(), lambda: Expr::zero() };
        assert_eq!(energy_densities(&st, &bad, &Expr::zero(), &Expr::zero()), Err(RelativityError::KappaZero));
    }

    #[test]
    fn comoving_fluids_normalized() {
        let g = minkowski();
        let u = OneForm(vec![Expr::int(-1), Expr::zero(), Expr::zero(), Expr::zero()]);
        let mut r = FluidComponent::perfect(v("s"), v("p"), u.clone());
        r.q = OneForm::basis(4, 1);
        let mut m = FluidComponent::perfect(v("s"), v("p"), u);
        m.q = OneForm::basis(4, 2);
        let items = fluid_normalization(&r, &m, &g);
        // two unit timelike velocities are never orthogonal
        for (k, it) in items.iter().enumerate() {
            assert_eq!(it.holds, !matches!(k, 4 | 8 | 9), "{}", it.label);
        }
    }
}
