//! Parsers for command-line argument values.

use std::collections::BTreeMap;

use crate::geometry::{Chart, VectorField};
use crate::symexpr::Q;

use super::HarnessError;

/// `"1,0,0,0;0,exp(x),0,0"`: two vectors separated by `;`, components
/// by `,`, each an expression over the chart.
pub fn parse_plane(chart: &Chart, text: &str) -> Result<(VectorField, VectorField), HarnessError> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 2 {
        return Err(HarnessError::Invalid(format!("--plane: expected two vectors separated by `;`, got `{text}`")));
    }
    let n = chart.dim();
    let vec = |s: &str, which: &str| -> Result<VectorField, HarnessError> {
        let comps: Vec<&str> = s.split(',').map(str::trim).collect();
        if comps.len() != n {
            return Err(HarnessError::Dimension(format!("--plane: {which} vector has {} components, chart has {n}", comps.len())));
        }
        comps
            .iter()
            .map(|c| chart.parse(c).map_err(|source| HarnessError::Expr { field: format!("--plane {which}"), source }))
            .collect::<Result<Vec<_>, _>>()
            .map(VectorField)
    };
    Ok((vec(parts[0], "first")?, vec(parts[1], "second")?))
}

/// `"t=0,x=1/2"` into exact rationals.
pub fn parse_sample_point(text: &str) -> Result<BTreeMap<String, Q>, HarnessError> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| HarnessError::Invalid(format!("--sample-point: `{item}` is not `name=rational`")))?;
        let q: Q = v
            .trim()
            .parse()
            .map_err(|_| HarnessError::Invalid(format!("--sample-point: `{}` is not an exact rational", v.trim())))?;
        if out.insert(k.trim().to_string(), q).is_some() {
            return Err(HarnessError::Duplicate(format!("--sample-point: `{}` given twice", k.trim())));
        }
    }
    Ok(out)
}
