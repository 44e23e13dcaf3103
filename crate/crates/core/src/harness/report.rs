//! Verification reports and their text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::coqe::Verdict;
use crate::symexpr::Expr;

use super::HarnessError;

pub const RIEMANN_SIGN: &str =
    "R(X,Y)Z = ∇_X∇_Y Z - ∇_Y∇_X Z - ∇_[X,Y] Z; R(X,Y,Z,W) = g(R(X,Y)Z,W); S(Y,Z) = tr(X -> R(X,Y)Z)";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conventions {
    pub riemann_sign: String,
    /// Trace conventions applied to the structure tensors, in report order.
    pub trace: Vec<String>,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { riemann_sign: RIEMANN_SIGN.into(), trace: vec!["plain".into(), "metric".into()] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    /// 1-based component indices; empty for scalars.
    pub indices: Vec<usize>,
    pub expr: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub residuals: Vec<Residual>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        CheckReport { name: name.into(), verdict, residuals: Vec::new(), notes: Vec::new() }
    }

    /// Pass when `ok`, otherwise `fallback`.
    pub fn cond(name: impl Into<String>, ok: bool, fallback: Verdict) -> Self {
        Self::new(name, if ok { Verdict::Pass } else { fallback })
    }

    pub fn residual(mut self, indices: Vec<usize>, e: &Expr) -> Self {
        self.residuals.push(Residual { indices, expr: e.to_string() });
        self
    }

    /// Append 0-based components, shifting them to 1-based.
    pub fn components(mut self, comps: impl IntoIterator<Item = (Vec<usize>, Expr)>) -> Self {
        for (i, e) in comps {
            self.residuals.push(Residual { indices: i.into_iter().map(|k| k + 1).collect(), expr: e.to_string() });
        }
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub conventions: Conventions,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(checks: Vec<CheckReport>) -> Self {
        Report { version: env!("CARGO_PKG_VERSION").into(), conventions: Conventions::default(), checks }
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    /// 0 when nothing failed (flags allowed), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.count(Verdict::Fail) > 0 {
            1
        } else {
            0
        }
    }

    pub fn get(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "coqe {}", self.version).unwrap();
        writeln!(out, "convention: {}", self.conventions.riemann_sign).unwrap();
        writeln!(out, "trace conventions: {}", self.conventions.trace.join(", ")).unwrap();
        for c in &self.checks {
            writeln!(out, "[{:<7}] {}", c.verdict.as_str(), c.name).unwrap();
            for r in &c.residuals {
                if r.indices.is_empty() {
                    writeln!(out, "    {}", r.expr).unwrap();
                } else {
                    let idx: Vec<String> = r.indices.iter().map(|i| i.to_string()).collect();
                    writeln!(out, "    ({}) {}", idx.join(","), r.expr).unwrap();
                }
            }
            for n in &c.notes {
                writeln!(out, "    note: {n}").unwrap();
            }
        }
        writeln!(
            out,
            "summary: {} pass, {} flagged, {} fail; exit {}",
            self.count(Verdict::Pass),
            self.count(Verdict::Flagged),
            self.count(Verdict::Fail),
            self.exit_code()
        )
        .unwrap();
        out
    }
}

/// Render as `text` or `json`.
pub fn emit_report(r: &Report, format: &str) -> Result<Vec<u8>, HarnessError> {
    match format {
        "text" => Ok(r.to_text().into_bytes()),
        "json" => Ok((r.to_json() + "\n").into_bytes()),
        other => Err(HarnessError::Format(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_exits_zero() {
        let r = Report::new(Vec::new());
        assert_eq!(r.exit_code(), 0);
        assert!(r.to_text().contains("exit 0"));
    }

    #[test]
    fn one_failure_exits_one() {
        let r = Report::new(vec![
            CheckReport::new("a", Verdict::Pass),
            CheckReport::new("b", Verdict::Flagged),
            CheckReport::new("c", Verdict::Fail),
        ]);
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_text().ends_with("summary: 1 pass, 1 flagged, 1 fail; exit 1\n"));
    }

    #[test]
    fn json_schema_keys() {
        let r = Report::new(vec![CheckReport::new("a", Verdict::Flagged).residual(vec![1, 2], &Expr::int(3)).note("n")]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["checks", "conventions", "version"]);
        assert_eq!(v["conventions"]["trace"], serde_json::json!(["plain", "metric"]));
        assert_eq!(v["checks"][0]["verdict"], "flagged");
        assert_eq!(v["checks"][0]["residuals"][0], serde_json::json!({"indices": [1, 2], "expr": "3"}));
    }

    #[test]
    fn unknown_format() {
        assert_eq!(emit_report(&Report::new(Vec::new()), "xml"), Err(HarnessError::Format("xml".into())));
    }
}
