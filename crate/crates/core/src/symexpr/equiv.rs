//! Zero recognition, substitution and equivalence.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::normalize_factors;
use super::rational::Q;
use super::{Atom, Expr, ExprError, Symbol, TermAcc};

/// Number of random points used by the numeric fallback.
pub const FALLBACK_POINTS: usize = 20;
/// Relative tolerance of the numeric fallback.
pub const FALLBACK_TOL: f64 = 1e-10;

/// Outcome of [`equivalent`].
#[derive(Clone, Debug, PartialEq)]
pub enum Equivalence {
    /// Canonical forms agree (possibly after clearing denominators).
    Proven,
    /// Numeric agreement at the listed points only.
    Probabilistic { points: Vec<BTreeMap<String, Q>> },
    Different,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        !matches!(self, Equivalence::Different)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Equivalence::Proven => "proven",
            Equivalence::Probabilistic { .. } => "probabilistic",
            Equivalence::Different => "different",
        }
    }
}

/// Exact zero test. Complete for rational functions in symbols, radicals,
/// `exp` and same-argument `sin`/`cos`.
pub fn is_zero(e: &Expr) -> bool {
    if e.is_zero() {
        return true;
    }
    let mut cur = e.clone();
    for _ in 0..3 {
        let cleared = clear_denominators(&cur);
        if cleared.is_zero() {
            return true;
        }
        if cleared == cur {
            return false;
        }
        cur = cleared;
    }
    false
}

/// Canonical form with hidden zeros removed, and short quotients that
/// reduce to a rational constant replaced by it. Idempotent.
pub fn simplify(e: &Expr) -> Expr {
    if is_zero(e) {
        Expr::zero()
    } else if let Some(c) = rational_quotient(e) {
        Expr::rational(c)
    } else {
        e.clone()
    }
}

/// `Some(c)` when clearing denominators leaves `c` times the cleared
/// denominator. Only tried on short expressions.
fn rational_quotient(e: &Expr) -> Option<Q> {
    if e.is_constant() || e.terms().len() > 8 {
        return None;
    }
    let worst = denominator_powers(e);
    if worst.is_empty() {
        return None;
    }
    let (mut num, mut den) = (e.clone(), Expr::one());
    for (a, x) in &worst {
        num = mul_atom_power(&num, a, &-x.clone());
        den = mul_atom_power(&den, a, &-x.clone());
    }
    let (m, cn) = num.terms().first()?;
    let (_, cd) = den.terms().iter().find(|(md, _)| md == m)?;
    let c = cn / cd;
    is_zero(&num.sub(&den.scale(&c))).then_some(c)
}

/// Multiply by the largest negative power of every denominator atom.
fn clear_denominators(e: &Expr) -> Expr {
    let mut out = e.clone();
    for (a, x) in denominator_powers(e) {
        out = mul_atom_power(&out, &a, &-x);
    }
    out
}

fn denominator_powers(e: &Expr) -> BTreeMap<Atom, Q> {
    let mut worst: BTreeMap<Atom, Q> = BTreeMap::new();
    for (m, _) in e.terms() {
        for (a, x) in &m.0 {
            if matches!(a, Atom::Radical(_) | Atom::Exp(_)) || !x.is_negative() {
                continue;
            }
            let slot = worst.entry(a.clone()).or_insert_with(Q::zero);
            if x < slot {
                *slot = x.clone();
            }
        }
    }
    worst
}

/// Multiply each term by `a^x` before normalizing, so that opaque powers
/// cancel against the atom instead of being expanded first.
fn mul_atom_power(e: &Expr, a: &Atom, x: &Q) -> Expr {
    let mut acc = TermAcc::default();
    for (m, c) in e.terms() {
        let mut f = m.0.clone();
        f.push((a.clone(), x.clone()));
        acc.add_scaled(&normalize_factors(f), c);
    }
    acc.finish()
}

/// Decide `a == b`: exactly when possible, otherwise by sampling
/// [`FALLBACK_POINTS`] random rational points drawn from `seed`.
pub fn equivalent(a: &Expr, b: &Expr, seed: u64) -> Equivalence {
    if a == b {
        return Equivalence::Proven;
    }
    let diff = a.sub(b);
    if is_zero(&diff) {
        return Equivalence::Proven;
    }
    let mut syms = a.free_symbols();
    syms.extend(b.free_symbols());
    syms.sort();
    syms.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut attempts = 0;
    while points.len() < FALLBACK_POINTS && attempts < FALLBACK_POINTS * 5 {
        attempts += 1;
        let pt: BTreeMap<String, Q> =
            syms.iter().map(|s| (s.name().to_string(), random_rational(&mut rng))).collect();
        let fl: BTreeMap<String, f64> = pt.iter().map(|(k, v)| (k.clone(), super::rational::q_to_f64(v))).collect();
        let (va, vb) = match (a.eval_f64(&fl), b.eval_f64(&fl)) {
            (Ok(x), Ok(y)) if x.is_finite() && y.is_finite() => (x, y),
            _ => continue,
        };
        let scale = 1f64.max(va.abs()).max(vb.abs());
        if (va - vb).abs() > FALLBACK_TOL * scale {
            return Equivalence::Different;
        }
        points.push(pt);
    }
    if points.is_empty() {
        return Equivalence::Different;
    }
    Equivalence::Probabilistic { points }
}

/// Random rational in roughly (0.3, 1.7) with a small denominator.
fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    let d: i64 = rng.gen_range(7..=97);
    let lo = (3 * d + 9) / 10;
    let hi = (17 * d) / 10;
    let n: i64 = rng.gen_range(lo..=hi);
    Q::new(BigInt::from(n), BigInt::from(d))
}

impl Expr {
    /// Substitute symbols by expressions.
    pub fn subs(&self, map: &HashMap<Symbol, Expr>) -> Result<Expr, ExprError> {
        if map.is_empty() {
            return Ok(self.clone());
        }
        let mut total = Expr::zero();
        for (m, c) in self.terms() {
            let mut t = Expr::rational(c.clone());
            let mut deferred: Vec<(Atom, Q)> = Vec::new();
            for (a, x) in &m.0 {
                let base = match a {
                    Atom::Sym(s) => match map.get(s) {
                        Some(v) => v.clone(),
                        None => {
                            deferred.push((a.clone(), x.clone()));
                            continue;
                        }
                    },
                    Atom::Radical(_) => {
                        deferred.push((a.clone(), x.clone()));
                        continue;
                    }
                    Atom::Pow(s) => s.subs(map)?,
                    Atom::Exp(u) => u.subs(map)?.exp(),
                    Atom::Log(u) => u.subs(map)?.log()?,
                    Atom::Sin(u) => u.subs(map)?.sin(),
                    Atom::Cos(u) => u.subs(map)?.cos(),
                };
                t = t.mul(&base.pow(x)?);
            }
            if !deferred.is_empty() {
                t = t.mul(&super::expr::normalize_factors(deferred));
            }
            total = total.add(&t);
        }
        Ok(total)
    }

    /// Substitute a single symbol.
    pub fn subs1(&self, s: &Symbol, v: &Expr) -> Result<Expr, ExprError> {
        let mut map = HashMap::new();
        map.insert(s.clone(), v.clone());
        self.subs(&map)
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
    fn simplify_examples() {
        assert_eq!(p("exp(x)*exp(-x)"), Expr::one());
        assert_eq!(p("(-1/k^2)*k^2 + 5/2 - 1/4 - 1/4"), Expr::one());
        assert_eq!(p("sin(x)^2 + cos(x)^2"), Expr::one());
        assert!(is_zero(&p("x/(x+1) + 1/(x+1) - 1")));
        assert!(is_zero(&p("1/(x^2-1) - 1/((x-1)*(x+1))")));
        assert!(is_zero(&p("tan(x)^2 + 1 - 1/cos(x)^2")));
        assert!(!is_zero(&p("x/(x+1)")));
        assert_eq!(simplify(&p("1/(1+sin(t)^2) + sin(t)^2/(1+sin(t)^2)")), Expr::one());
        assert_eq!(simplify(&p("(2*x+2)/(x+1)")), Expr::int(2));
        assert_eq!(simplify(&p("x/(x+1)")), p("x/(x+1)"));
    }

    #[test]
    fn equivalence_examples() {
        assert_eq!(equivalent(&p("exp(x)^2"), &p("exp(2*x)"), 1), Equivalence::Proven);
        assert_eq!(equivalent(&p("x+1"), &p("x"), 1), Equivalence::Different);
        assert_eq!(equivalent(&p("2/sqrt(2)"), &p("sqrt(2)"), 1), Equivalence::Proven);
        // double angle is outside the rewrite rules; only sampling sees it
        let v = equivalent(&p("sin(2*x)"), &p("2*sin(x)*cos(x)"), 7);
        assert!(matches!(v, Equivalence::Probabilistic { ref points } if points.len() == FALLBACK_POINTS));
    }

    #[test]
    fn substitution() {
        let x = Symbol::new("x");
        let e = p("exp(2*x) + x^2");
        assert_eq!(e.subs1(&x, &Expr::zero()).unwrap(), Expr::one());
        assert_eq!(e.subs1(&x, &p("y+1")).unwrap(), p("exp(2*y+2) + y^2 + 2*y + 1"));
        assert!(p("1/x").subs1(&x, &Expr::zero()).is_err());
    }
}
