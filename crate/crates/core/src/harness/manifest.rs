//! Manifest files: a chart, a metric, and optional structure, ansatz, matter
//! and constants blocks, all with string-valued expressions.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coqe::{CoQEStructure, QccCoefficients};
use crate::geometry::{Chart, Metric, OneForm, Tensor};
use crate::relativity::{FluidComponent, GravConstants};
use crate::symexpr::{Assumptions, Expr, Q};

use super::checks::CheckName;
use super::{fixtures, HarnessError};

/// Ordered `"i,j" = "expr"` entries. Keeps duplicates so validation can
/// reject them whatever the input syntax.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComponentMap(pub Vec<(String, String)>);

impl ComponentMap {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for ComponentMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for ComponentMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ComponentMap;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from \"i,j\" to expression strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<ComponentMap, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry::<String, String>()? {
                    out.push((k, v));
                }
                Ok(ComponentMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParam {
    pub name: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub nonzero: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub positive: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawChart {
    pub coords: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<RawParam>,
    /// Exact rationals overriding the default sample point.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sample: BTreeMap<String, String>,
}

fn zero_str() -> String {
    "0".into()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStructure {
    pub a: String,
    /// Upper-triangle `b_ij`, 1-based; absent entries are zero.
    #[serde(default, skip_serializing_if = "ComponentMap::is_empty")]
    pub b: ComponentMap,
    #[serde(default = "zero_str")]
    pub c1: String,
    #[serde(default = "zero_str")]
    pub c2: String,
    /// Components of `ω¹ … ω⁴`.
    pub omega: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "ComponentMap::is_empty")]
    pub d1: ComponentMap,
    #[serde(default, skip_serializing_if = "ComponentMap::is_empty")]
    pub d2: ComponentMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_r: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQcc {
    /// `a₁ … a₁₃`.
    pub a: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFluid {
    pub sigma: String,
    #[serde(default = "zero_str")]
    pub p: String,
    #[serde(default = "zero_str")]
    pub zeta: String,
    #[serde(default, skip_serializing_if = "ComponentMap::is_empty")]
    pub e: ComponentMap,
    pub omega: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFluids {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radiation: Option<RawFluid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matter: Option<RawFluid>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConstants {
    pub kappa: String,
    #[serde(default = "zero_str")]
    pub lambda: String,
    /// Energy density entering the space-matter tensor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
}

/// The manifest exactly as written.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawManifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default)]
    pub checks: Vec<String>,
    pub chart: RawChart,
    pub metric: ComponentMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<RawStructure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qcc: Option<RawQcc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fluids: Option<RawFluids>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<RawConstants>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Toml,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Toml,
        }
    }
}

impl RawManifest {
    pub fn parse(text: &str, format: Format) -> Result<Self, HarnessError> {
        match format {
            Format::Toml => toml::from_str(text).map_err(|e| {
                let msg = e.message().to_string();
                let at = e.span().map(|s| line_col(text, s.start));
                if msg.contains("duplicate key") {
                    HarnessError::Duplicate(location_prefix(at) + &msg)
                } else {
                    HarnessError::Parse(location_prefix(at) + &msg)
                }
            }),
            Format::Json => serde_json::from_str(text)
                .map_err(|e| HarnessError::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))),
        }
    }

    pub fn to_text(&self, format: Format) -> Result<String, HarnessError> {
        match format {
            Format::Toml => toml::to_string(self).map_err(|e| HarnessError::Parse(e.to_string())),
            Format::Json => serde_json::to_string_pretty(self).map_err(|e| HarnessError::Parse(e.to_string())),
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, col)
}

fn location_prefix(at: Option<(usize, usize)>) -> String {
    at.map_or(String::new(), |(l, c)| format!("line {l}, column {c}: "))
}

/// A validated manifest: every expression parsed over the chart.
#[derive(Clone, Debug)]
pub struct Manifest {
    pub raw: RawManifest,
    pub metric: Metric,
    pub structure: Option<CoQEStructure>,
    pub qcc: Option<QccCoefficients>,
    /// Radiation and matter components; a missing component is vacuum.
    pub fluids: Option<(FluidComponent, FluidComponent)>,
    pub constants: Option<GravConstants>,
    pub sigma: Option<Expr>,
    pub checks: Vec<CheckName>,
}

impl Manifest {
    pub fn name(&self) -> &str {
        self.raw.name.as_deref().unwrap_or("manifest")
    }

    pub fn chart(&self) -> &Chart {
        self.metric.chart()
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn from_text(text: &str, format: Format) -> Result<Self, HarnessError> {
        Self::from_raw(RawManifest::parse(text, format)?)
    }

    /// Validate and parse every block.
    pub fn from_raw(raw: RawManifest) -> Result<Self, HarnessError> {
        let chart = build_chart(&raw.chart)?;
        let n = chart.dim();
        let ctx = Ctx { chart: &chart };
        let g = ctx.symmetric("metric", &raw.metric, n)?;
        let metric = Metric::new(chart.clone(), g).map_err(|e| HarnessError::Invalid(format!("metric: {e}")))?;
        let structure = raw.structure.as_ref().map(|s| ctx.structure(s, n)).transpose()?;
        let qcc = raw.qcc.as_ref().map(|q| ctx.qcc(q)).transpose()?;
        let fluids = raw.fluids.as_ref().map(|f| ctx.fluids(f, n)).transpose()?;
        let (constants, sigma) = match &raw.constants {
            Some(c) => {
                let kappa = ctx.expr("constants.kappa", &c.kappa)?;
                let lambda = ctx.expr("constants.lambda", &c.lambda)?;
                let consts = GravConstants::new(kappa, lambda).map_err(|e| HarnessError::Invalid(e.to_string()))?;
                let sigma = c.sigma.as_ref().map(|s| ctx.expr("constants.sigma", s)).transpose()?;
                (Some(consts), sigma)
            }
            None => (None, None),
        };
        let mut m = Manifest { raw, metric, structure, qcc, fluids, constants, sigma, checks: Vec::new() };
        let names = m.raw.checks.clone();
        m.checks = m.resolve_checks(&names)?;
        Ok(m)
    }

    /// Expand `all` and validate that each named check has its inputs.
    pub fn resolve_checks(&self, names: &[String]) -> Result<Vec<CheckName>, HarnessError> {
        let mut out = Vec::new();
        for name in names {
            if name == "all" {
                for c in CheckName::ALL {
                    if !c.heavy() && self.missing_input(c).is_none() && !out.contains(&c) {
                        out.push(c);
                    }
                }
                continue;
            }
            let c = CheckName::parse(name).ok_or_else(|| HarnessError::UnknownCheck(name.clone()))?;
            if let Some(block) = self.missing_input(c) {
                return Err(HarnessError::MissingInput { check: c.as_str().into(), needs: block.into() });
            }
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// What a check lacks to run on this manifest, if anything.
    pub fn missing_input(&self, c: CheckName) -> Option<&'static str> {
        use CheckName::*;
        let n = self.dim();
        match c {
            CoqeVerify | Classify | TraceIdentity | GeneratorRicci | LengthIdentity | Fit | EnergyDensities
                if self.structure.is_none() =>
            {
                Some("a structure block")
            }
            Qcc if self.qcc.is_none() || self.structure.is_none() => Some("qcc and structure blocks"),
            Fluid | EnergyDensities if self.constants.is_none() => Some("a constants block"),
            Spacematter if self.constants.is_none() || self.sigma.is_none() => Some("constants.kappa and constants.sigma"),
            Weyl | Cotton if n < 3 => Some("dimension at least 3"),
            Spacematter | Fluid if n < 3 => Some("dimension at least 3"),
            _ => None,
        }
    }

    /// Override sample-point coordinates and parameter values.
    pub fn with_sample(mut self, values: &BTreeMap<String, Q>) -> Result<Self, HarnessError> {
        for (k, v) in values {
            self.raw.chart.sample.insert(k.clone(), v.to_string());
        }
        let checks = self.raw.checks.clone();
        let mut m = Self::from_raw(self.raw)?;
        m.checks = m.resolve_checks(&checks)?;
        Ok(m)
    }
}

fn build_chart(raw: &RawChart) -> Result<Chart, HarnessError> {
    let coords: Vec<&str> = raw.coords.iter().map(String::as_str).collect();
    let params: Vec<(&str, Assumptions)> = raw
        .params
        .iter()
        .map(|p| (p.name.as_str(), Assumptions { nonzero: p.nonzero || p.positive, positive: p.positive }))
        .collect();
    let mut chart = Chart::new(&coords, &params).map_err(|e| HarnessError::Invalid(e.to_string()))?;
    if !raw.sample.is_empty() {
        let mut values = BTreeMap::new();
        for (k, v) in &raw.sample {
            let q: Q = v
                .trim()
                .parse()
                .map_err(|_| HarnessError::Invalid(format!("chart.sample.{k}: `{v}` is not an exact rational")))?;
            values.insert(k.clone(), q);
        }
        chart.set_sample(&values).map_err(|e| HarnessError::Invalid(e.to_string()))?;
    }
    Ok(chart)
}

/// Parse `"i,j"` into 0-based indices.
fn index_pair(field: &str, key: &str, n: usize) -> Result<(usize, usize), HarnessError> {
    let bad = || HarnessError::Invalid(format!("{field}: key `{key}` is not of the form \"i,j\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    for v in [i, j] {
        if v == 0 || v > n {
            return Err(HarnessError::Dimension(format!("{field}: index {v} in `{key}` is outside 1..={n}")));
        }
    }
    Ok((i - 1, j - 1))
}

struct Ctx<'a> {
    chart: &'a Chart,
}

impl Ctx<'_> {
    fn expr(&self, field: &str, text: &str) -> Result<Expr, HarnessError> {
        self.chart.parse(text).map_err(|source| HarnessError::Expr { field: field.into(), source })
    }

    /// Upper-triangle entries of a symmetric matrix; duplicates, including
    /// a pair given as both `i,j` and `j,i`, are rejected.
    fn symmetric(&self, field: &str, map: &ComponentMap, n: usize) -> Result<Vec<Vec<Expr>>, HarnessError> {
        let mut seen = BTreeMap::new();
        let mut m = vec![vec![Expr::zero(); n]; n];
        for (key, text) in &map.0 {
            let (i, j) = index_pair(field, key, n)?;
            let (i, j) = (i.min(j), i.max(j));
            if let Some(prev) = seen.insert((i, j), key.clone()) {
                return Err(HarnessError::Duplicate(format!(
                    "{field}: entry ({},{}) given twice (as `{prev}` and `{key}`)",
                    i + 1,
                    j + 1
                )));
            }
            let e = self.expr(&format!("{field} {key}"), text)?;
            m[i][j] = e.clone();
            m[j][i] = e;
        }
        Ok(m)
    }

    fn form(&self, field: &str, comps: &[String], n: usize) -> Result<OneForm, HarnessError> {
        if comps.len() != n {
            return Err(HarnessError::Dimension(format!("{field}: {} components for a {n}-chart", comps.len())));
        }
        let v: Result<Vec<Expr>, _> =
            comps.iter().enumerate().map(|(i, c)| self.expr(&format!("{field}[{}]", i + 1), c)).collect();
        Ok(OneForm(v?))
    }

    fn structure(&self, s: &RawStructure, n: usize) -> Result<CoQEStructure, HarnessError> {
        if s.omega.len() != 4 {
            return Err(HarnessError::Invalid(format!("structure.omega: expected 4 forms, got {}", s.omega.len())));
        }
        let forms: Result<Vec<OneForm>, _> =
            s.omega.iter().enumerate().map(|(k, w)| self.form(&format!("structure.omega[{}]", k + 1), w, n)).collect();
        let omega: [OneForm; 4] = forms?.try_into().expect("four forms");
        let bm = self.symmetric("structure.b", &s.b, 4)?;
        let b: [[Expr; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| bm[i][j].clone()));
        let d1 = Tensor::from_matrix(&self.symmetric("structure.d1", &s.d1, n)?);
        let d2 = Tensor::from_matrix(&self.symmetric("structure.d2", &s.d2, n)?);
        let st = CoQEStructure::new(
            self.expr("structure.a", &s.a)?,
            b,
            self.expr("structure.c1", &s.c1)?,
            self.expr("structure.c2", &s.c2)?,
            omega,
            d1,
            d2,
        )
        .map_err(|e| HarnessError::Invalid(format!("structure: {e}")))?;
        Ok(match &s.declared_r {
            Some(r) => st.with_declared_r(self.expr("structure.declared_r", r)?),
            None => st,
        })
    }

    fn qcc(&self, q: &RawQcc) -> Result<QccCoefficients, HarnessError> {
        if q.a.len() != 13 {
            return Err(HarnessError::Invalid(format!("qcc.a: expected 13 coefficients, got {}", q.a.len())));
        }
        let v: Result<Vec<Expr>, _> =
            q.a.iter().enumerate().map(|(k, s)| self.expr(&format!("qcc.a[{}]", k + 1), s)).collect();
        Ok(QccCoefficients(v?.try_into().expect("thirteen")))
    }

    fn fluid(&self, name: &str, f: &RawFluid, n: usize) -> Result<FluidComponent, HarnessError> {
        let field = |s: &str| format!("fluids.{name}.{s}");
        let e = Tensor::from_matrix(&self.symmetric(&field("e"), &f.e, n)?);
        let omega = self.form(&field("omega"), &f.omega, n)?;
        let q = match &f.q {
            Some(q) => self.form(&field("q"), q, n)?,
            None => OneForm::zero(n),
        };
        FluidComponent::new(
            self.expr(&field("sigma"), &f.sigma)?,
            self.expr(&field("p"), &f.p)?,
            self.expr(&field("zeta"), &f.zeta)?,
            e,
            omega,
            q,
        )
        .map_err(|e| HarnessError::Invalid(format!("fluids.{name}: {e}")))
    }

    fn fluids(&self, f: &RawFluids, n: usize) -> Result<(FluidComponent, FluidComponent), HarnessError> {
        let one = |name: &str, raw: &Option<RawFluid>| match raw {
            Some(r) => self.fluid(name, r, n),
            None => Ok(FluidComponent::vacuum(n)),
        };
        Ok((one("radiation", &f.radiation)?, one("matter", &f.matter)?))
    }
}

/// Read a manifest file; `.json` files are JSON, anything else TOML.
pub fn load_manifest(path: &Path) -> Result<Manifest, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    Manifest::from_text(&text, Format::from_path(path))
}

/// A path if one exists, otherwise a bundled fixture name.
pub fn resolve_manifest(arg: &str) -> Result<Manifest, HarnessError> {
    let path = Path::new(arg);
    if path.exists() {
        return load_manifest(path);
    }
    match fixtures::fixture(arg) {
        Some(text) => Manifest::from_text(text, Format::Toml),
        None => Err(HarnessError::Io(format!(
            "`{arg}` is neither a file nor a bundled fixture ({})",
            fixtures::NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
checks = ["curvature"]
[chart]
coords = ["t", "x", "y", "z"]
[metric]
"1,1" = "-1"
"2,2" = "1"
"3,3" = "1"
"4,4" = "1"
"#;

    #[test]
    fn godel_fixture_loads() {
        let m = resolve_manifest("godel").unwrap();
        assert_eq!(m.dim(), 4);
        let names: Vec<&str> = m.chart().coords().iter().map(|s| s.name()).collect();
        assert_eq!(names, ["t", "x", "y", "z"]);
        assert_eq!(m.chart().params()[0].name(), "k");
        assert!(m.chart().params()[0].assumptions().nonzero);
        assert_eq!(m.raw.metric.0.len(), 5);
        assert_eq!(m.structure.as_ref().unwrap().declared_r, Some(m.chart().parse("-1/k^2").unwrap()));
    }

    #[test]
    fn duplicate_metric_entry_rejected() {
        let text = SMALL.replace("\"2,2\" = \"1\"", "\"1,2\" = \"0\"\n\"2,1\" = \"0\"\n\"2,2\" = \"1\"");
        assert!(matches!(Manifest::from_text(&text, Format::Toml), Err(HarnessError::Duplicate(_))));
        let text = SMALL.replace("\"2,2\" = \"1\"", "\"2,2\" = \"1\"\n\"2,2\" = \"1\"");
        assert!(matches!(Manifest::from_text(&text, Format::Toml), Err(HarnessError::Duplicate(_))));
    }

    #[test]
    fn unknown_symbol_rejected() {
        let text = SMALL.replace("\"4,4\" = \"1\"", "\"4,4\" = \"w^2\"");
        let err = Manifest::from_text(&text, Format::Toml).unwrap_err();
        assert!(err.to_string().contains("unknown symbol `w`"), "{err}");
    }

    #[test]
    fn unknown_check_rejected() {
        let text = SMALL.replace("[\"curvature\"]", "[\"curvatur\"]");
        assert_eq!(Manifest::from_text(&text, Format::Toml).unwrap_err(), HarnessError::UnknownCheck("curvatur".into()));
    }

    #[test]
    fn index_out_of_range_rejected() {
        let text = SMALL.replace("\"4,4\"", "\"4,5\"");
        assert!(matches!(Manifest::from_text(&text, Format::Toml), Err(HarnessError::Dimension(_))));
    }

    #[test]
    fn json_is_accepted() {
        let raw = RawManifest::parse(SMALL, Format::Toml).unwrap();
        let json = raw.to_text(Format::Json).unwrap();
        assert_eq!(RawManifest::parse(&json, Format::Json).unwrap(), raw);
    }

    #[test]
    fn toml_round_trip_of_every_fixture() {
        for name in fixtures::NAMES {
            let raw = RawManifest::parse(fixtures::fixture(name).unwrap(), Format::Toml).unwrap();
            let text = raw.to_text(Format::Toml).unwrap();
            assert_eq!(RawManifest::parse(&text, Format::Toml).unwrap(), raw, "{name}");
        }
    }

    #[test]
    fn sample_override_applies() {
        let m = Manifest::from_text(SMALL, Format::Toml).unwrap();
        let m = m.with_sample(&BTreeMap::from([("x".to_string(), Q::from_integer(3.into()))])).unwrap();
        assert_eq!(m.chart().sample_f64()["x"], 3.0);
        let bad = BTreeMap::from([("w".to_string(), Q::from_integer(3.into()))]);
        assert!(m.with_sample(&bad).is_err());
    }
}
