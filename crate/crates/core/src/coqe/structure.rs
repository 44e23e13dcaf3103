use serde::Serialize;

use crate::geometry::{eval2, CurvatureBundle, Metric, OneForm, Tensor, VectorField};
use crate::symexpr::{is_zero, simplify, Expr};

use super::classify::{classify, ClassLabel};
use super::identities::{trace_identity_for, TraceIdentity};
use super::CoqeError;

/// Outcome of a single check. `Flagged` marks a discrepancy that does not
/// invalidate the result it accompanies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Flagged,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Flagged => "flagged",
        }
    }
}

/// Associated scalars, generator forms and structure tensors of a
/// decomposition `S = a g + Σ b_ij ω^i ω^j + c₁ d₁ + c₂ d₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoQEStructure {
    pub a: Expr,
    /// Symmetric; the sum runs over all ordered pairs `(i, j)`.
    pub b: [[Expr; 4]; 4],
    pub c1: Expr,
    pub c2: Expr,
    pub omega: [OneForm; 4],
    pub d1: Tensor,
    pub d2: Tensor,
    /// Scalar curvature claimed by the source of the structure, if any.
    pub declared_r: Option<Expr>,
}

impl CoQEStructure {
    /// Checks shapes, symmetry of `b`, `d₁`, `d₂`, and that every `ω^i` is nonzero.
    pub fn new(
        a: Expr,
        b: [[Expr; 4]; 4],
        c1: Expr,
        c2: Expr,
        omega: [OneForm; 4],
        d1: Tensor,
        d2: Tensor,
    ) -> Result<Self, CoqeError> {
        let n = d1.dim();
        for (k, w) in omega.iter().enumerate() {
            if w.0.len() != n {
                return Err(CoqeError::Shape(format!("ω^{} has {} components, expected {n}", k + 1, w.0.len())));
            }
            if w.is_zero() {
                return Err(CoqeError::ZeroForm(k + 1));
            }
        }
        for (t, name) in [(&d1, "d1"), (&d2, "d2")] {
            if t.dim() != n || t.rank() != 2 {
                return Err(CoqeError::Shape(format!("{name} must be a rank-2 tensor of dimension {n}")));
            }
            if !t.is_symmetric() {
                return Err(CoqeError::Asymmetric(name.into()));
            }
        }
        for i in 0..4 {
            for j in 0..i {
                if !is_zero(&b[i][j].sub(&b[j][i])) {
                    return Err(CoqeError::Asymmetric(format!("b{}{} != b{}{}", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(CoQEStructure { a, b, c1, c2, omega, d1, d2, declared_r: None })
    }

    pub fn with_declared_r(mut self, r: Expr) -> Self {
        self.declared_r = Some(r);
        self
    }

    pub fn dim(&self) -> usize {
        self.d1.dim()
    }

    /// Upper-triangle `b` entries, 1-based, in row order.
    pub fn b_upper(&self) -> Vec<((usize, usize), &Expr)> {
        let mut out = Vec::with_capacity(10);
        for i in 0..4 {
            for j in i..4 {
                out.push(((i + 1, j + 1), &self.b[i][j]));
            }
        }
        out
    }

    /// Multiply every associated scalar by `s`.
    pub fn scaled(&self, s: &Expr) -> Self {
        let mut out = self.clone();
        out.a = simplify(&self.a.mul(s));
        out.c1 = simplify(&self.c1.mul(s));
        out.c2 = simplify(&self.c2.mul(s));
        for row in out.b.iter_mut() {
            for e in row.iter_mut() {
                *e = simplify(&e.mul(s));
            }
        }
        out
    }

    /// Metric duals `W_i` of the generator forms.
    pub fn generators(&self, metric: &Metric) -> [VectorField; 4] {
        self.omega.clone().map(|w| metric.sharp(&w))
    }

    /// Gram matrix `g(W_i, W_j) = ω^i(W_j)`.
    pub fn gram(&self, metric: &Metric) -> Vec<Vec<Expr>> {
        let w = self.generators(metric);
        (0..4).map(|i| (0..4).map(|j| self.omega[i].apply(&w[j])).collect()).collect()
    }

    /// `Σ b_ij ω^i ⊗ ω^j`.
    pub fn b_part(&self) -> Tensor {
        let n = self.dim();
        Tensor::covariant(n, 2, |idx| {
            let mut acc = Vec::new();
            for i in 0..4 {
                for j in 0..4 {
                    let b = &self.b[i][j];
                    if b.is_zero() {
                        continue;
                    }
                    let (u, v) = (&self.omega[i].0[idx[0]], &self.omega[j].0[idx[1]]);
                    if !u.is_zero() && !v.is_zero() {
                        acc.push(b.mul(u).mul(v));
                    }
                }
            }
            acc.into_iter().sum()
        })
    }

    /// The right-hand side of the decomposition as a (0,2) tensor.
    pub fn model(&self, metric: &Metric) -> Tensor {
        let b = self.b_part();
        Tensor::covariant(self.dim(), 2, |i| {
            let (x, y) = (i[0], i[1]);
            self.a
                .mul(metric.g(x, y))
                .add(b.at(x, y))
                .add(&self.c1.mul(self.d1.at(x, y)))
                .add(&self.c2.mul(self.d2.at(x, y)))
        })
    }
}

/// `model − S` for the bundle's Ricci tensor; zero iff the structure holds.
pub fn decomposition_residual(bundle: &CurvatureBundle, st: &CoQEStructure) -> Result<Tensor, CoqeError> {
    decomposition_residual_for(bundle.ricci(), bundle.metric(), st)
}

/// Residual against an explicit Ricci tensor.
pub fn decomposition_residual_for(ricci: &Tensor, metric: &Metric, st: &CoQEStructure) -> Result<Tensor, CoqeError> {
    let n = metric.dim();
    if n < 4 {
        return Err(CoqeError::Dimension { need: 4, got: n });
    }
    if st.dim() != n || ricci.dim() != n {
        return Err(CoqeError::Shape(format!("structure has dimension {}, chart has {n}", st.dim())));
    }
    if ricci.is_zero() {
        return Err(CoqeError::RicciZero);
    }
    Ok(st.model(metric).sub(ricci))
}

/// One named constraint with its residual components.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintCheck {
    pub name: String,
    pub verdict: Verdict,
    /// 1-based indices and the offending expression.
    pub residuals: Vec<(Vec<usize>, Expr)>,
    pub notes: Vec<String>,
}

impl ConstraintCheck {
    fn new(name: &str, ok: bool, soft: bool, residuals: Vec<(Vec<usize>, Expr)>) -> Self {
        let verdict = if ok {
            Verdict::Pass
        } else if soft {
            Verdict::Flagged
        } else {
            Verdict::Fail
        };
        ConstraintCheck { name: name.into(), verdict, residuals, notes: Vec::new() }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

/// Everything known about a structure on a given metric.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub checks: Vec<ConstraintCheck>,
    /// `g(W_i, W_j)`.
    pub gram: Vec<Vec<Expr>>,
    /// Diagonal sums `Σ d_ii` of `d₁`, `d₂`.
    pub plain_traces: [Expr; 2],
    /// `g^{ij} d_ij` of `d₁`, `d₂`.
    pub metric_traces: [Expr; 2],
    /// `None` when the Ricci tensor is zero or the dimension is too small.
    pub residual: Option<Tensor>,
    pub classification: ClassLabel,
    pub trace_identity: TraceIdentity,
}

impl StructureReport {
    pub fn decomposition_holds(&self) -> bool {
        self.residual.as_ref().is_some_and(|r| r.is_zero())
    }

    pub fn check(&self, name: &str) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }
}

pub fn verify_structure_constraints(bundle: &CurvatureBundle, st: &CoQEStructure) -> StructureReport {
    verify_structure_for(bundle.ricci(), bundle.metric(), st)
}

/// Constraint report against an explicit Ricci tensor. Constraint
/// violations are flagged rather than failed when the decomposition itself
/// holds; the metric trace of `d₁`, `d₂` is only ever flagged.
pub fn verify_structure_for(ricci: &Tensor, metric: &Metric, st: &CoQEStructure) -> StructureReport {
    let mut checks = Vec::new();
    let residual = decomposition_residual_for(ricci, metric, st);
    let holds = residual.as_ref().is_ok_and(|r| r.is_zero());
    checks.push(match &residual {
        Ok(r) => ConstraintCheck::new("decomposition", r.is_zero(), false, one_based(r.nonzero())),
        Err(e) => ConstraintCheck::new("decomposition", false, false, Vec::new()).note(e.to_string()),
    });

    let gram = st.gram(metric);
    let mut unit = Vec::new();
    let mut orth = Vec::new();
    for i in 0..4 {
        let gii = &gram[i][i];
        if !is_zero(&gii.mul(gii).sub(&Expr::one())) {
            unit.push((vec![i + 1, i + 1], gii.clone()));
        }
        for j in i + 1..4 {
            if !is_zero(&gram[i][j]) {
                orth.push((vec![i + 1, j + 1], gram[i][j].clone()));
            }
        }
    }
    checks.push(
        ConstraintCheck::new("unit-generators", unit.is_empty(), holds, unit).note("unit means |g(W,W)| = 1"),
    );
    checks.push(ConstraintCheck::new("orthogonal-generators", orth.is_empty(), holds, orth));

    let n = metric.dim();
    let plain = |d: &Tensor| simplify(&(0..n).map(|i| d.at(i, i).clone()).sum());
    let plain_traces = [plain(&st.d1), plain(&st.d2)];
    let metric_traces = [metric.trace(&st.d1), metric.trace(&st.d2)];
    for k in 0..2 {
        let name = format!("d{}", k + 1);
        let p = &plain_traces[k];
        checks.push(
            ConstraintCheck::new(&format!("{name}-plain-trace"), p.is_zero(), holds, nonzero_scalar(p))
                .note("convention: plain diagonal sum"),
        );
        let m = &metric_traces[k];
        checks.push(
            ConstraintCheck::new(&format!("{name}-metric-trace"), m.is_zero(), true, nonzero_scalar(m))
                .note("convention: metric trace g^ij d_ij"),
        );
    }

    let w = st.generators(metric);
    for (k, d) in [&st.d1, &st.d2].into_iter().enumerate() {
        let hits: Vec<(Vec<usize>, Expr)> = (0..n)
            .filter_map(|i| {
                let v = eval2(d, &VectorField::basis(n, i), &w[0]);
                (!v.is_zero()).then(|| (vec![i + 1], v))
            })
            .collect();
        checks.push(ConstraintCheck::new(&format!("d{}-annihilates-W1", k + 1), hits.is_empty(), holds, hits));
    }

    let classification = classify(st);
    let trace_identity = trace_identity_for(ricci, metric, st);
    StructureReport {
        checks,
        gram,
        plain_traces,
        metric_traces,
        residual: residual.ok(),
        classification,
        trace_identity,
    }
}

fn nonzero_scalar(e: &Expr) -> Vec<(Vec<usize>, Expr)> {
    if e.is_zero() {
        Vec::new()
    } else {
        vec![(Vec::new(), e.clone())]
    }
}

pub(crate) fn one_based(v: Vec<(Vec<usize>, Expr)>) -> Vec<(Vec<usize>, Expr)> {
    v.into_iter().map(|(i, e)| (i.into_iter().map(|k| k + 1).collect(), e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coqe::testing::{godel_bundle, godel_structure};
    use crate::geometry::Chart;

    #[test]
    fn godel_residual_vanishes() {
        let bundle = godel_bundle();
        let st = godel_structure(&bundle);
        assert!(decomposition_residual(&bundle, &st).unwrap().is_zero());
    }

    #[test]
    fn dropping_b34_breaks_component_13() {
        let bundle = godel_bundle();
        let mut st = godel_structure(&bundle);
        st.b[2][3] = Expr::zero();
        st.b[3][2] = Expr::zero();
        let r = decomposition_residual(&bundle, &st).unwrap();
        assert_eq!(r.at(0, 2), &Expr::var("x").exp().scale(&crate::symexpr::q(-2, 1)));
        assert!(!verify_structure_constraints(&bundle, &st).passed());
    }

    #[test]
    fn godel_constraint_report() {
        let bundle = godel_bundle();
        let st = godel_structure(&bundle);
        let rep = verify_structure_constraints(&bundle, &st);
        let k = bundle.metric().chart();
        assert_eq!(rep.check("decomposition").unwrap().verdict, Verdict::Pass);
        assert_eq!(rep.check("unit-generators").unwrap().verdict, Verdict::Pass);
        assert_eq!(rep.check("orthogonal-generators").unwrap().verdict, Verdict::Flagged);
        assert_eq!(rep.gram[2][3], k.parse("sqrt(2)").unwrap());
        assert_eq!(rep.check("d1-plain-trace").unwrap().verdict, Verdict::Pass);
        assert_eq!(rep.check("d2-plain-trace").unwrap().verdict, Verdict::Pass);
        assert_eq!(rep.check("d1-metric-trace").unwrap().verdict, Verdict::Flagged);
        assert_eq!(rep.metric_traces[0], k.parse("1/k^2 - exp(2*x)/(2*k^2)").unwrap());
        assert_eq!(rep.check("d1-annihilates-W1").unwrap().verdict, Verdict::Pass);
        assert_eq!(rep.check("d2-annihilates-W1").unwrap().verdict, Verdict::Pass);
        for i in 0..4 {
            assert_eq!(rep.gram[i][i], Expr::int(-1));
        }
        assert!(rep.passed());
    }

    #[test]
    fn flat_metric_is_rejected() {
        let chart = Chart::coordinates(&["x", "y", "z", "w"]).unwrap();
        let metric = Metric::diagonal(chart, vec![Expr::one(); 4]).unwrap();
        let bundle = CurvatureBundle::new(metric);
        let omega = [0, 1, 2, 3].map(|i| OneForm::basis(4, i));
        let zero = Tensor::covariant(4, 2, |_| Expr::zero());
        let st = CoQEStructure::new(Expr::one(), Default::default(), Expr::zero(), Expr::zero(), omega, zero.clone(), zero)
            .unwrap();
        let err = decomposition_residual(&bundle, &st).unwrap_err();
        assert_eq!(err.to_string(), "Ricci tensor is zero; definition requires non-zero");
    }

    #[test]
    fn zero_form_is_rejected() {
        let mut omega = [0, 1, 2, 3].map(|i| OneForm::basis(4, i));
        omega[2] = OneForm::zero(4);
        let zero = Tensor::covariant(4, 2, |_| Expr::zero());
        let err = CoQEStructure::new(Expr::one(), Default::default(), Expr::zero(), Expr::zero(), omega, zero.clone(), zero);
        assert_eq!(err.unwrap_err(), CoqeError::ZeroForm(3));
    }
}
