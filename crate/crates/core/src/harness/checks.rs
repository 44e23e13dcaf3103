//! Named checks and the pipeline that runs them over a manifest.

use crate::coqe::{
    classify_verified, fit_decomposition, generator_ricci_values, length_identity, qcc_contract, build_qcc_curvature,
    sectional_from_structure, structure_unknowns, trace_identity, verify_structure_constraints, CoQEStructure,
    FitMode, Verdict,
};
use crate::geometry::{contract, index_tuples, weyl_of, CurvatureBundle, Tensor, VectorField};
use crate::relativity::{
    div_space_matter, div_space_matter_direct, efe_residual, energy_density_consistency, fluid_normalization,
    ricci_from_fluids, sigma_gradient_from_div_p, stress_energy, FluidComponent,
};
use crate::symexpr::{is_zero, simplify, Equivalence, Expr};

use super::manifest::Manifest;
use super::report::{CheckReport, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckName {
    Curvature,
    CoqeVerify,
    Classify,
    TraceIdentity,
    GeneratorRicci,
    LengthIdentity,
    Fit,
    Qcc,
    Sectional,
    Weyl,
    Bianchi,
    Cotton,
    Fluid,
    EnergyDensities,
    Spacematter,
}

impl CheckName {
    /// Canonical order used when expanding `all`.
    pub const ALL: [CheckName; 15] = [
        CheckName::Curvature,
        CheckName::CoqeVerify,
        CheckName::Classify,
        CheckName::TraceIdentity,
        CheckName::GeneratorRicci,
        CheckName::LengthIdentity,
        CheckName::Fit,
        CheckName::Qcc,
        CheckName::Sectional,
        CheckName::Weyl,
        CheckName::Bianchi,
        CheckName::Cotton,
        CheckName::Fluid,
        CheckName::EnergyDensities,
        CheckName::Spacematter,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Curvature => "curvature",
            CheckName::CoqeVerify => "coqe-verify",
            CheckName::Classify => "classify",
            CheckName::TraceIdentity => "trace-identity",
            CheckName::GeneratorRicci => "generator-ricci",
            CheckName::LengthIdentity => "length-identity",
            CheckName::Fit => "fit",
            CheckName::Qcc => "qcc",
            CheckName::Sectional => "sectional",
            CheckName::Weyl => "weyl",
            CheckName::Bianchi => "bianchi",
            CheckName::Cotton => "cotton",
            CheckName::Fluid => "fluid",
            CheckName::EnergyDensities => "energy-densities",
            CheckName::Spacematter => "spacematter",
        }
    }

    pub fn parse(s: &str) -> Option<CheckName> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }

    /// Excluded from `all`.
    pub fn heavy(self) -> bool {
        matches!(self, CheckName::Cotton)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    /// Plane for the sectional check; coordinate planes when absent.
    pub plane: Option<(VectorField, VectorField)>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 42, plane: None }
    }
}

/// Run the manifest's checks in manifest order.
pub fn run_checks(m: &Manifest, opts: &RunOptions) -> Report {
    run_named(m, &m.checks, opts)
}

pub fn run_named(m: &Manifest, names: &[CheckName], opts: &RunOptions) -> Report {
    let bundle = CurvatureBundle::new(m.metric.clone());
    let mut out = Vec::new();
    for &c in names {
        out.extend(run_one(c, m, &bundle, opts));
    }
    Report::new(out)
}

fn fail(name: &str, e: impl std::fmt::Display) -> Vec<CheckReport> {
    vec![CheckReport::new(name, Verdict::Fail).note(e.to_string())]
}

fn run_one(c: CheckName, m: &Manifest, b: &CurvatureBundle, opts: &RunOptions) -> Vec<CheckReport> {
    let st = m.structure.as_ref();
    match c {
        CheckName::Curvature => curvature(b, st),
        CheckName::CoqeVerify => coqe_verify(b, st.expect("validated")),
        CheckName::Classify => classify(b, st.expect("validated")),
        CheckName::TraceIdentity => trace(b, st.expect("validated")),
        CheckName::GeneratorRicci => generator_ricci(b, st.expect("validated")),
        CheckName::LengthIdentity => length(b, st.expect("validated")),
        CheckName::Fit => fit(b, st.expect("validated"), opts.seed),
        CheckName::Qcc => qcc(m, b),
        CheckName::Sectional => sectional(b, st, opts),
        CheckName::Weyl => weyl(b),
        CheckName::Bianchi => bianchi(b),
        CheckName::Cotton => cotton(b),
        CheckName::Fluid => fluid(m, b),
        CheckName::EnergyDensities => energy(m),
        CheckName::Spacematter => spacematter(m, b),
    }
}

fn curvature(b: &CurvatureBundle, st: Option<&CoQEStructure>) -> Vec<CheckReport> {
    let n = b.dim();
    let gamma = b.christoffel();
    let mut chr = CheckReport::new("curvature/christoffel", Verdict::Pass).note("Γ^a_{bc} with b ≤ c");
    for a in 0..n {
        for bb in 0..n {
            for c in bb..n {
                let v = gamma.get(&[a, bb, c]);
                if !v.is_zero() {
                    chr = chr.residual(vec![a + 1, bb + 1, c + 1], v);
                }
            }
        }
    }
    let ricci = CheckReport::new("curvature/ricci", Verdict::Pass)
        .components(b.ricci().nonzero().into_iter().filter(|(i, _)| i[0] <= i[1]));
    let r = b.scalar();
    let mut scalar = CheckReport::new("curvature/scalar", Verdict::Pass).residual(Vec::new(), r);
    if let Some(declared) = st.and_then(|s| s.declared_r.as_ref()) {
        if is_zero(&declared.sub(r)) {
            scalar = scalar.note(format!("declared r = {declared} agrees"));
        } else {
            scalar.verdict = Verdict::Flagged;
            scalar = scalar.note(format!("declared r = {declared} differs from the contracted r = {r}"));
        }
    }
    vec![chr, ricci, scalar]
}

fn coqe_verify(b: &CurvatureBundle, st: &CoQEStructure) -> Vec<CheckReport> {
    let rep = verify_structure_constraints(b, st);
    let mut out: Vec<CheckReport> = rep
        .checks
        .iter()
        .map(|c| {
            let mut r = CheckReport::new(format!("coqe-verify/{}", c.name), c.verdict);
            for (i, e) in &c.residuals {
                r = r.residual(i.clone(), e);
            }
            for note in &c.notes {
                r = r.note(note.clone());
            }
            r
        })
        .collect();
    let mut gram = CheckReport::new("coqe-verify/gram", Verdict::Pass).note("g(W_i, W_j)");
    for i in 0..4 {
        for j in i..4 {
            gram = gram.residual(vec![i + 1, j + 1], &rep.gram[i][j]);
        }
    }
    out.push(gram);
    out
}

fn classify(b: &CurvatureBundle, st: &CoQEStructure) -> Vec<CheckReport> {
    match classify_verified(b.ricci(), b.metric(), st) {
        Ok(label) => vec![CheckReport::new("classify", Verdict::Pass).note(format!("class: {label}"))],
        Err(e) => fail("classify", e),
    }
}

fn trace(b: &CurvatureBundle, st: &CoQEStructure) -> Vec<CheckReport> {
    let t = trace_identity(b, st);
    let verdict = match (t.corrected_matches, t.literal_matches && t.declared_matches != Some(false)) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Flagged,
    };
    let mut r = CheckReport::new("trace-identity", verdict)
        .note(format!("unit-generator form a n + Σ b_ii = {}", t.literal_value))
        .note(format!("Gram-corrected form = {}", t.corrected_value))
        .note(format!("contracted r = {}", t.computed_r));
    if let Some(d) = &st.declared_r {
        let tag = if t.declared_matches == Some(true) { "agrees" } else { "mismatch" };
        r = r.note(format!("declared r = {d} ({tag})"));
    }
    if !t.literal_matches {
        r = r.residual(Vec::new(), &simplify(&t.literal_value.sub(&t.computed_r)));
    }
    vec![r]
}

fn generator_ricci(b: &CurvatureBundle, st: &CoQEStructure) -> Vec<CheckReport> {
    let g = generator_ricci_values(b, st);
    let corrected = g.identities.iter().all(|d| d.corrected_holds);
    let literal = g.identities.iter().all(|d| d.literal_holds);
    let verdict = if !corrected {
        Verdict::Fail
    } else if literal {
        Verdict::Pass
    } else {
        Verdict::Flagged
    };
    let mut r = CheckReport::new("generator-ricci", verdict);
    for d in &g.identities {
        if !d.literal_holds || !d.corrected_holds {
            r = r.residual(vec![d.pair.0, d.pair.1], &simplify(&d.direct.sub(&d.literal_form)));
        }
    }
    if !g.orthonormal {
        r = r.note("generators are not orthonormal; unit-generator forms compared against S(W_i, W_j)");
    }
    let failing = g.identities.iter().filter(|d| !d.literal_holds).count();
    vec![r.note(format!("{failing} of {} unit-generator forms differ; Gram-corrected forms all hold: {corrected}", g.identities.len()))]
}

fn length(b: &CurvatureBundle, st: &CoQEStructure) -> Vec<CheckReport> {
    match length_identity(b, st) {
        Ok(l) => {
            let verdict = if !l.corrected_holds.holds() {
                Verdict::Fail
            } else if l.literal_holds.holds() {
                Verdict::Pass
            } else {
                Verdict::Flagged
            };
            let mut r = CheckReport::new("length-identity", verdict)
                .note(format!("corrected form: {}", l.corrected_holds.label()))
                .note(format!("literal form: {}", l.literal_holds.label()))
                .note(format!("frame evaluation deviation {:.3e}", l.frame_deviation));
            if !l.literal_holds.holds() {
                r = r.residual(Vec::new(), &simplify(&l.literal_lhs.sub(&l.literal_rhs)));
            }
            for (label, eq) in [("corrected", &l.corrected_holds), ("literal", &l.literal_holds)] {
                if let Equivalence::Probabilistic { points } = eq {
                    r = r.note(format!("{label} form agreed numerically at {}", render_points(points)));
                }
            }
            vec![r]
        }
        Err(e) => fail("length-identity", e),
    }
}

fn render_points(points: &[std::collections::BTreeMap<String, crate::symexpr::Q>]) -> String {
    let one = |p: &std::collections::BTreeMap<String, crate::symexpr::Q>| {
        let kv: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("({})", kv.join(", "))
    };
    points.iter().map(one).collect::<Vec<_>>().join(" ")
}

fn fit(b: &CurvatureBundle, st: &CoQEStructure, seed: u64) -> Vec<CheckReport> {
    let point = match fit_decomposition(b, &st.omega, &st.d1, &st.d2, FitMode::Pointwise) {
        Ok(f) => {
            let ok = f.satisfies(&structure_unknowns(st));
            let mut r = CheckReport::cond("fit/pointwise", ok, Verdict::Fail)
                .note(format!("rank {}, nullity {}", f.rank, f.nullity()))
                .note(if ok { "manifest scalars solve the system" } else { "manifest scalars do not solve the system" });
            for (name, v) in crate::coqe::FitResult::unknown_names().iter().zip(&f.values) {
                if !v.is_zero() {
                    r = r.note(format!("{name} = {v}"));
                }
            }
            r
        }
        Err(e) => CheckReport::new("fit/pointwise", Verdict::Fail).note(e.to_string()),
    };
    let constant = match fit_decomposition(b, &st.omega, &st.d1, &st.d2, FitMode::Constant { seed }) {
        Ok(f) => CheckReport::new("fit/constant", Verdict::Pass)
            .note(format!("constant scalars exist; rank {}, nullity {}", f.rank, f.nullity())),
        Err(e) => CheckReport::new("fit/constant", Verdict::Pass).note(format!("no constant solution: {e}")),
    };
    vec![point, constant]
}

fn qcc(m: &Manifest, b: &CurvatureBundle) -> Vec<CheckReport> {
    let (q, st) = (m.qcc.as_ref().expect("validated"), m.structure.as_ref().expect("validated"));
    let metric = b.metric();
    let built = match build_qcc_curvature(q, metric, &st.omega, &st.d1, &st.d2) {
        Ok(t) => t,
        Err(e) => return fail("qcc", e),
    };
    let w = weyl_of(&built, metric);
    let weyl_free = CheckReport::cond("qcc/weyl-free", w.is_zero(), Verdict::Fail).components(w.nonzero());
    let contraction = match qcc_contract(q, metric, &st.omega, &st.d1, &st.d2) {
        Ok(c) => CheckReport::cond("qcc/contraction", c.matches(), Verdict::Flagged)
            .note("listed b-coefficients assume orthonormal generators and trace-free d's")
            .components(c.residual.nonzero().into_iter().filter(|(i, _)| i[0] <= i[1])),
        Err(e) => CheckReport::new("qcc/contraction", Verdict::Fail).note(e.to_string()),
    };
    let diff = built.sub(&b.curvature_form());
    let matches = CheckReport::cond("qcc/curvature-match", diff.is_zero(), Verdict::Flagged)
        .note("ansatz against the manifold's own curvature")
        .note(format!("{} differing components", diff.nonzero().len()));
    vec![weyl_free, contraction, matches]
}

fn sectional(b: &CurvatureBundle, st: Option<&CoQEStructure>, opts: &RunOptions) -> Vec<CheckReport> {
    let n = b.dim();
    let mut r = CheckReport::new("sectional", Verdict::Pass);
    match &opts.plane {
        Some((x, y)) => match b.sectional_curvature(x, y) {
            Ok(k) => r = r.residual(Vec::new(), &k).note("K of the requested plane"),
            Err(e) => return fail("sectional", e),
        },
        None => {
            for i in 0..n {
                for j in i + 1..n {
                    match b.sectional_curvature(&VectorField::basis(n, i), &VectorField::basis(n, j)) {
                        Ok(k) => r = r.residual(vec![i + 1, j + 1], &k),
                        Err(e) => r = r.note(format!("plane ({},{}): {e}", i + 1, j + 1)),
                    }
                }
            }
            r = r.note("K of coordinate planes");
        }
    }
    if let Some(st) = st {
        if let Ok(f) = sectional_from_structure(st, n) {
            r = r.note(format!("closed form K(X,Y) = {}", f.k_xy));
            for (i, k) in f.k_xw.iter().enumerate() {
                r = r.note(format!("closed form K(X,W{}) = {k}", i + 1));
            }
        }
    }
    vec![r]
}

fn weyl(b: &CurvatureBundle) -> Vec<CheckReport> {
    match b.weyl() {
        Ok(w) => {
            let tr = contract(&w, b.metric());
            CheckReport::cond("weyl", tr.is_zero(), Verdict::Fail)
                .components(tr.nonzero())
                .note(if w.is_zero() { "conformally flat" } else { "Weyl tensor nonzero" })
                .note("Ricci contraction of the Weyl tensor")
                .into_vec()
        }
        Err(e) => fail("weyl", e),
    }
}

impl CheckReport {
    fn into_vec(self) -> Vec<CheckReport> {
        vec![self]
    }
}

fn bianchi(b: &CurvatureBundle) -> Vec<CheckReport> {
    let rm = b.curvature_form();
    let n = b.dim();
    let mut bad: Vec<(Vec<usize>, Expr)> = Vec::new();
    for i in index_tuples(n, 4) {
        let (x, y, z, w) = (i[0], i[1], i[2], i[3]);
        let v = rm.get(&i);
        let checks = [
            v.add(rm.get(&[y, x, z, w])),
            v.add(rm.get(&[x, y, w, z])),
            v.sub(rm.get(&[z, w, x, y])),
            v.add(rm.get(&[y, z, x, w])).add(rm.get(&[z, x, y, w])),
        ];
        for e in checks {
            let e = simplify(&e);
            if !e.is_zero() {
                bad.push((i.clone(), e));
                break;
            }
        }
    }
    let algebraic = CheckReport::cond("bianchi/algebraic", bad.is_empty(), Verdict::Fail)
        .note("skew pairs, pair symmetry, first Bianchi identity")
        .components(bad);
    let defect = b.contracted_bianchi_defect();
    let contracted = CheckReport::cond("bianchi/contracted", defect.is_zero(), Verdict::Fail)
        .note("div S - dr/2")
        .components(defect.0.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| (vec![i], e.clone())));
    vec![algebraic, contracted]
}

fn cotton(b: &CurvatureBundle) -> Vec<CheckReport> {
    let n = b.dim() as i64;
    let (dw, c) = match (b.div_weyl(), b.cotton()) {
        (Ok(a), Ok(c)) => (a, c),
        (Err(e), _) | (_, Err(e)) => return fail("cotton", e),
    };
    let k = Expr::frac(n - 3, n - 2);
    let res = dw.add(&c.scale(&k));
    CheckReport::cond("cotton", res.is_zero(), Verdict::Fail)
        .note("div C_weyl + (n-3)/(n-2) Cotton")
        .components(res.nonzero())
        .into_vec()
}

fn fluid_pair(m: &Manifest) -> (FluidComponent, FluidComponent) {
    m.fluids.clone().unwrap_or_else(|| (FluidComponent::vacuum(m.dim()), FluidComponent::vacuum(m.dim())))
}

fn fluid(m: &Manifest, b: &CurvatureBundle) -> Vec<CheckReport> {
    let consts = m.constants.as_ref().expect("validated");
    let (r, mm) = fluid_pair(m);
    let metric = b.metric();
    let t = match stress_energy(&r, &mm, metric) {
        Ok(t) => t,
        Err(e) => return fail("fluid", e),
    };
    let res = efe_residual(b, &t, consts);
    let efe = CheckReport::cond("fluid/field-equations", res.is_zero(), Verdict::Fail)
        .note("S - (r/2) g + Λ g - κ T")
        .note("κ multiplies T, Λ multiplies g; the names follow the equation")
        .components(res.nonzero().into_iter().filter(|(i, _)| i[0] <= i[1]));
    let mut out = vec![efe];
    match ricci_from_fluids(&r, &mm, consts, metric, b.scalar()) {
        Ok(fr) => {
            let d = fr.ricci.sub(b.ricci());
            let mut c = CheckReport::cond("fluid/ricci-form", d.is_zero(), Verdict::Fail)
                .components(d.nonzero().into_iter().filter(|(i, _)| i[0] <= i[1]));
            for (name, v) in fr.identification.terms() {
                c = c.note(format!("{name} = {v}"));
            }
            out.push(c);
        }
        Err(e) => out.push(CheckReport::new("fluid/ricci-form", Verdict::Fail).note(e.to_string())),
    }
    let mut norm = CheckReport::new("fluid/normalization", Verdict::Pass);
    let items = fluid_normalization(&r, &mm, metric);
    let present = [!r.omega.is_zero(), !mm.omega.is_zero(), !r.q.is_zero(), !mm.q.is_zero()];
    for it in items {
        let relevant = relevant_item(&it.label, present);
        if !relevant {
            continue;
        }
        if !it.holds {
            norm.verdict = Verdict::Flagged;
            norm = norm.note(format!("{} fails: value {}", it.label, it.value));
        }
    }
    out.push(norm);
    out
}

/// Normalization items mentioning an absent velocity or heat flux are skipped.
fn relevant_item(label: &str, [wr, wm, qr, qm]: [bool; 4]) -> bool {
    let needs = [("W_r", wr), ("ω^r", wr), ("W_m", wm), ("ω^m", wm), ("Q_r", qr), ("q^r", qr), ("Q_m", qm), ("q^m", qm)];
    needs.iter().all(|(tag, ok)| *ok || !label.contains(tag))
}

fn energy(m: &Manifest) -> Vec<CheckReport> {
    let st = m.structure.as_ref().expect("validated");
    let consts = m.constants.as_ref().expect("validated");
    let (r, mm) = fluid_pair(m);
    match energy_density_consistency(st, consts, &r.p, &mm.p) {
        Ok(c) => {
            let agree = c.agree[0] && c.agree[1];
            CheckReport::cond("energy-densities", agree, Verdict::Flagged)
                .note(format!("σ_r = {}", c.literal.0))
                .note(format!("σ_m = {}", c.literal.1))
                .note(format!("from b11 = κ(σ_r + p_r): σ_r = {}", c.identified.0))
                .note(format!("from b22 = κ(σ_m + p_m): σ_m = {}", c.identified.1))
                .into_vec()
        }
        Err(e) => fail("energy-densities", e),
    }
}

fn spacematter(m: &Manifest, b: &CurvatureBundle) -> Vec<CheckReport> {
    let consts = m.constants.as_ref().expect("validated");
    let sigma = m.sigma.as_ref().expect("validated");
    let closed = div_space_matter(b, sigma);
    let mut out = Vec::new();
    match div_space_matter_direct(b, consts, sigma) {
        Ok(direct) => {
            let d = closed.sub(&direct);
            out.push(
                CheckReport::cond("spacematter/closed-form", d.is_zero(), Verdict::Fail)
                    .note("closed form of div P against direct differentiation")
                    .components(d.nonzero()),
            );
        }
        Err(e) => out.push(CheckReport::new("spacematter/closed-form", Verdict::Fail).note(e.to_string())),
    }
    out.push(
        CheckReport::cond("spacematter/divergence", closed.is_zero(), Verdict::Flagged)
            .note(if closed.is_zero() { "div P = 0" } else { "div P is not zero" })
            .components(nonzero_sample(&closed, 6)),
    );
    match sigma_gradient_from_div_p(b) {
        Ok(sg) => {
            let mut r = CheckReport::new("spacematter/sigma-gradient", Verdict::Pass)
                .note(format!("contracting div P = 0 over (Y,Z): {} dσ + remainder = 0", sg.coefficient));
            r = r.components(sg.dsigma.0.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| (vec![i], e.clone())));
            if sg.dsigma.is_zero() {
                r = r.note("forces dσ = 0");
            }
            out.push(r);
        }
        Err(e) => out.push(CheckReport::new("spacematter/sigma-gradient", Verdict::Fail).note(e.to_string())),
    }
    out
}

fn nonzero_sample(t: &Tensor, k: usize) -> Vec<(Vec<usize>, Expr)> {
    t.nonzero().into_iter().take(k).collect()
}
