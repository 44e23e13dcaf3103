use std::collections::BTreeMap;

use crate::symexpr::{parse_with, q, Assumptions, Expr, ExprError, Symbol, SymbolTable, Q};

use super::GeometryError;

/// A coordinate chart: coordinates, parameters and a sample point used for
/// numeric certificates (invertibility, signature, degenerate planes).
#[derive(Clone, Debug)]
pub struct Chart {
    coords: Vec<Symbol>,
    params: Vec<Symbol>,
    sample: BTreeMap<String, Q>,
}

impl Chart {
    /// Coordinates get no assumptions. The default sample point puts every
    /// coordinate at 1/3 and every parameter at 2.
    pub fn new(coords: &[&str], params: &[(&str, Assumptions)]) -> Result<Self, GeometryError> {
        if coords.len() < 2 {
            return Err(GeometryError::Chart("dimension must be at least 2".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in coords.iter().copied().chain(params.iter().map(|p| p.0)) {
            if !seen.insert(name) {
                return Err(GeometryError::Chart(format!("name `{name}` used twice")));
            }
        }
        let coords: Vec<Symbol> = coords.iter().map(|c| Symbol::new(c)).collect();
        let params: Vec<Symbol> = params.iter().map(|(p, a)| Symbol::with_assumptions(p, *a)).collect();
        let mut sample = BTreeMap::new();
        for c in &coords {
            sample.insert(c.name().to_string(), q(1, 3));
        }
        for p in &params {
            sample.insert(p.name().to_string(), q(2, 1));
        }
        Ok(Chart { coords, params, sample })
    }

    /// Plain chart with coordinates only.
    pub fn coordinates(coords: &[&str]) -> Result<Self, GeometryError> {
        Self::new(coords, &[])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &Symbol {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.coords
    }

    pub fn params(&self) -> &[Symbol] {
        &self.params
    }

    pub fn coord_expr(&self, i: usize) -> Expr {
        Expr::symbol(&self.coords[i])
    }

    pub fn sample_point(&self) -> &BTreeMap<String, Q> {
        &self.sample
    }

    /// Override sample-point values; unknown names are an error.
    pub fn set_sample(&mut self, values: &BTreeMap<String, Q>) -> Result<(), GeometryError> {
        for (k, v) in values {
            if !self.sample.contains_key(k) {
                return Err(GeometryError::Chart(format!("sample point names unknown symbol `{k}`")));
            }
            self.sample.insert(k.clone(), v.clone());
        }
        Ok(())
    }

    pub fn sample_f64(&self) -> BTreeMap<String, f64> {
        self.sample.iter().map(|(k, v)| (k.clone(), crate::symexpr::rational::q_to_f64(v))).collect()
    }

    /// Strict symbol table of coordinates and parameters.
    pub fn table(&self) -> SymbolTable {
        let mut t = SymbolTable::strict();
        for s in self.coords.iter().chain(self.params.iter()) {
            t.declare(s.name(), s.assumptions());
        }
        t
    }

    /// Parse an expression over this chart; unknown symbols are rejected.
    pub fn parse(&self, text: &str) -> Result<Expr, ExprError> {
        parse_with(text, &self.table())
    }

    /// Evaluate at the sample point with extra coordinate values overriding it.
    pub fn eval_at(&self, e: &Expr, point: &BTreeMap<String, f64>) -> Result<f64, ExprError> {
        let mut vals = self.sample_f64();
        for (k, v) in point {
            vals.insert(k.clone(), *v);
        }
        e.eval_f64(&vals)
    }

    pub fn eval_sample(&self, e: &Expr) -> Result<f64, ExprError> {
        e.eval_f64(&self.sample_f64())
    }
}
