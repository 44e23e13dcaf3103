use std::collections::HashMap;

use num_traits::{One, Zero};

use super::expr::{atom_depends_on, normalize_factors};
use super::{Atom, Expr, Symbol, TermAcc, Q};

impl Expr {
    /// Partial derivative with respect to `var`; other symbols are constants.
    pub fn diff(&self, var: &Symbol) -> Expr {
        Differ { var, cache: HashMap::new() }.run(self)
    }

    /// Repeated partial derivatives, applied left to right.
    pub fn diff_many(&self, vars: &[&Symbol]) -> Expr {
        vars.iter().fold(self.clone(), |e, v| e.diff(v))
    }
}

struct Differ<'a> {
    var: &'a Symbol,
    cache: HashMap<Expr, Expr>,
}

impl Differ<'_> {
    fn run(&mut self, e: &Expr) -> Expr {
        if !e.depends_on(self.var) {
            return Expr::zero();
        }
        if let Some(d) = self.cache.get(e) {
            return d.clone();
        }
        let mut acc = TermAcc::default();
        for (m, c) in e.terms() {
            for (k, (atom, ex)) in m.0.iter().enumerate() {
                if !atom_depends_on(atom, self.var) {
                    continue;
                }
                let dbase = self.base_derivative(atom);
                if dbase.is_zero() {
                    continue;
                }
                let mut rest: Vec<(Atom, Q)> = m.0.clone();
                let lowered = ex - Q::one();
                if lowered.is_zero() {
                    rest.remove(k);
                } else {
                    rest[k].1 = lowered;
                }
                let term = normalize_factors(rest).mul(&dbase);
                acc.add_scaled(&term, &(c * ex));
            }
        }
        let out = acc.finish();
        self.cache.insert(e.clone(), out.clone());
        out
    }

    /// Derivative of the atom at exponent 1.
    fn base_derivative(&mut self, atom: &Atom) -> Expr {
        match atom {
            Atom::Sym(s) => {
                if s == self.var {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Atom::Radical(_) => Expr::zero(),
            Atom::Pow(b) => self.run(b),
            Atom::Exp(u) => self.run(u).mul(&u.exp()),
            Atom::Log(u) => {
                let du = self.run(u);
                du.div(u).expect("log argument is nonzero")
            }
            Atom::Sin(u) => self.run(u).mul(&u.cos()),
            Atom::Cos(u) => self.run(u).mul(&u.sin()).neg(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn exp_chain_rule() {
        let x = Symbol::new("x");
        assert_eq!(p("exp(2*x)").diff(&x), p("2*exp(2*x)"));
        assert_eq!(p("k^2*exp(2*x)/2").diff(&x), p("k^2*exp(2*x)"));
        assert!(p("exp(x)").diff(&Symbol::new("t")).is_zero());
    }

    #[test]
    fn trig_and_log() {
        let x = Symbol::new("x");
        assert_eq!(p("sin(x)").diff(&x), p("cos(x)"));
        assert_eq!(p("cos(x)").diff(&x), p("-sin(x)"));
        assert_eq!(p("log(x^2+1)").diff(&x), p("2*x/(x^2+1)"));
        assert_eq!(p("sin(x)^2").diff(&x), p("2*sin(x)*cos(x)"));
    }

    #[test]
    fn quotient() {
        let x = Symbol::new("x");
        let d = p("1/(1+x)").diff(&x);
        assert_eq!(d, p("-(1+x)^(-2)"));
        let d = p("sqrt(x)").diff(&x);
        assert_eq!(d, p("x^(-1/2)/2"));
    }
}
