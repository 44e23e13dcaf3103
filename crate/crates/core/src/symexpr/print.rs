//! Display in the parser's grammar, so `parse(e.to_string())` returns `e`.

use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::rational::{is_integer, Q};
use super::{Atom, Expr, Monomial};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let body = term_body(m, &c.abs());
            match (i, c.is_negative()) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// A positive coefficient times a monomial, as `num/den`.
fn term_body(m: &Monomial, c: &Q) -> String {
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    if !c.numer().is_one() {
        num.push(c.numer().to_string());
    }
    if !c.denom().is_one() {
        den.push(c.denom().to_string());
    }
    for (a, e) in &m.0 {
        // opaque powers and cosines keep negative exponents inline: moving
        // them under a division would re-expand them on parse
        let inline = matches!(a, Atom::Pow(_) | Atom::Cos(_));
        if e.is_negative() && !inline {
            den.push(factor_str(a, &-e));
        } else {
            num.push(factor_str(a, e));
        }
    }
    let mut out = if num.is_empty() { "1".to_string() } else { num.join("*") };
    match den.len() {
        0 => {}
        1 => write!(out, "/{}", den[0]).unwrap(),
        _ => write!(out, "/({})", den.join("*")).unwrap(),
    }
    out
}

fn factor_str(a: &Atom, e: &Q) -> String {
    let half = Q::new(1.into(), 2.into());
    if *e == half {
        return format!("sqrt({})", atom_inner(a));
    }
    let base = match a {
        Atom::Sym(s) => s.name().to_string(),
        Atom::Radical(p) => p.to_string(),
        Atom::Pow(s) => format!("({s})"),
        Atom::Exp(u) => format!("exp({u})"),
        Atom::Log(u) => format!("log({u})"),
        Atom::Sin(u) => format!("sin({u})"),
        Atom::Cos(u) => format!("cos({u})"),
    };
    if e.is_one() {
        base
    } else if is_integer(e) && e.is_positive() {
        format!("{base}^{e}")
    } else {
        format!("{base}^({e})")
    }
}

fn atom_inner(a: &Atom) -> String {
    match a {
        Atom::Pow(s) => s.to_string(),
        other => factor_str(other, &Q::one()),
    }
}
