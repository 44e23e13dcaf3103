use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{exact_rational_pow, is_integer, q_to_f64, Q};
use super::{Atom, Expr, ExprError, Symbol};

/// Result of evaluation: exact when no transcendental kernel was hit.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Q),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q_to_f64(q),
            Value::Float(f) => *f,
        }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Float(_) => None,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Float(f) => *f == 0.0,
        }
    }

    fn mul(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            (a, b) => Value::Float(a.to_f64() * b.to_f64()),
        }
    }

    fn add(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            (a, b) => Value::Float(a.to_f64() + b.to_f64()),
        }
    }

    fn pow(self, e: &Q) -> Result<Value, ExprError> {
        if self.is_zero() && e.is_negative() {
            return Err(ExprError::ZeroDivisor);
        }
        match &self {
            Value::Exact(c) => {
                if let Some(v) = exact_rational_pow(c, e) {
                    return Ok(Value::Exact(v));
                }
                if c.is_negative() && !is_integer(e) && e.denom() % 2u8 == 0u8.into() {
                    return Err(ExprError::Domain(format!("even root of negative value {c}")));
                }
                Ok(Value::Float(real_pow(q_to_f64(c), e)))
            }
            Value::Float(f) => Ok(Value::Float(real_pow(*f, e))),
        }
    }
}

/// Real power with odd roots of negative numbers allowed.
fn real_pow(x: f64, e: &Q) -> f64 {
    if is_integer(e) {
        if let Some(k) = e.to_integer().to_i32() {
            return x.powi(k);
        }
    }
    if x < 0.0 && e.denom() % 2u8 == 1u8.into() {
        let mag = (-x).powf(q_to_f64(e));
        return if e.numer() % 2u8 == 0u8.into() { mag } else { -mag };
    }
    x.powf(q_to_f64(e))
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Symbol values keyed by name.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bindings(BTreeMap<String, Value>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, v: Value) -> &mut Self {
        self.0.insert(name.to_string(), v);
        self
    }

    pub fn exact(mut self, name: &str, q: Q) -> Self {
        self.set(name, Value::Exact(q));
        self
    }

    pub fn float(mut self, name: &str, x: f64) -> Self {
        self.set(name, Value::Float(x));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Value)> {
        self.0.iter()
    }
}

impl FromIterator<(String, Value)> for Bindings {
    fn from_iter<I: IntoIterator<Item = (String, Value)>>(iter: I) -> Self {
        Bindings(iter.into_iter().collect())
    }
}

fn check_assumptions(s: &Symbol, v: &Value) -> Result<(), ExprError> {
    let a = s.assumptions();
    let x = v.to_f64();
    if a.nonzero && v.is_zero() {
        return Err(ExprError::Assumption(format!("`{}` is nonzero but bound to 0", s.name())));
    }
    if a.positive && x <= 0.0 {
        return Err(ExprError::Assumption(format!("`{}` is positive but bound to {v}", s.name())));
    }
    Ok(())
}

impl Expr {
    /// Evaluate with the given bindings. Exact whenever possible.
    pub fn eval(&self, b: &Bindings) -> Result<Value, ExprError> {
        let mut total = Value::Exact(Q::zero());
        for (m, c) in self.terms() {
            let mut v = Value::Exact(c.clone());
            for (atom, e) in &m.0 {
                let base = eval_atom(atom, b)?;
                v = v.mul(base.pow(e)?);
            }
            total = total.add(v);
        }
        Ok(total)
    }

    /// Floating-point evaluation; `lookup` returns the value of each symbol.
    pub fn eval_f64_with(&self, lookup: &dyn Fn(&Symbol) -> Option<f64>) -> Result<f64, ExprError> {
        let mut total = 0.0;
        for (m, c) in self.terms() {
            let mut v = q_to_f64(c);
            for (atom, e) in &m.0 {
                let base = match atom {
                    Atom::Sym(s) => {
                        let x = lookup(s).ok_or_else(|| ExprError::Unbound(s.name().to_string()))?;
                        check_assumptions(s, &Value::Float(x))?;
                        x
                    }
                    Atom::Radical(p) => p.to_f64().unwrap_or(f64::NAN),
                    Atom::Pow(s) => s.eval_f64_with(lookup)?,
                    Atom::Exp(u) => u.eval_f64_with(lookup)?.exp(),
                    Atom::Log(u) => u.eval_f64_with(lookup)?.ln(),
                    Atom::Sin(u) => u.eval_f64_with(lookup)?.sin(),
                    Atom::Cos(u) => u.eval_f64_with(lookup)?.cos(),
                };
                if base == 0.0 && e.is_negative() {
                    return Err(ExprError::ZeroDivisor);
                }
                v *= real_pow(base, e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Floating-point evaluation against name/value pairs.
    pub fn eval_f64(&self, vals: &BTreeMap<String, f64>) -> Result<f64, ExprError> {
        self.eval_f64_with(&|s: &Symbol| vals.get(s.name()).copied())
    }
}

fn eval_atom(atom: &Atom, b: &Bindings) -> Result<Value, ExprError> {
    Ok(match atom {
        Atom::Sym(s) => {
            let v = b.get(s.name()).ok_or_else(|| ExprError::Unbound(s.name().to_string()))?;
            check_assumptions(s, v)?;
            v.clone()
        }
        Atom::Radical(p) => Value::Exact(Q::from_integer(p.clone())),
        Atom::Pow(s) => s.eval(b)?,
        Atom::Exp(u) => match u.eval(b)? {
            Value::Exact(q) if q.is_zero() => Value::Exact(Q::one()),
            v => Value::Float(v.to_f64().exp()),
        },
        Atom::Log(u) => match u.eval(b)? {
            Value::Exact(q) if q.is_one() => Value::Exact(Q::zero()),
            v if v.is_zero() => return Err(ExprError::LogOfZero),
            v => {
                let x = v.to_f64();
                if x < 0.0 {
                    return Err(ExprError::Domain("logarithm of a negative value".into()));
                }
                Value::Float(x.ln())
            }
        },
        Atom::Sin(u) => match u.eval(b)? {
            Value::Exact(q) if q.is_zero() => Value::Exact(Q::zero()),
            v => Value::Float(v.to_f64().sin()),
        },
        Atom::Cos(u) => match u.eval(b)? {
            Value::Exact(q) if q.is_zero() => Value::Exact(Q::one()),
            v => Value::Float(v.to_f64().cos()),
        },
    })
}
