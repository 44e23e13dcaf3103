//! Canonical expression representation.
//!
//! Every [`Expr`] is kept in an expanded normal form: a sorted sum of terms,
//! each term a rational coefficient times a monomial. A monomial is a sorted
//! product of atoms raised to nonzero rational exponents. Atoms are symbols,
//! prime radicals, opaque powers of sums, and the kernel functions.
//!
//! Normalization rules applied on construction:
//! - products of sums are distributed; sums raised to positive integer powers
//!   are expanded,
//! - at most one `exp` atom per monomial, with exponent 1 (`exp(a)exp(b)` is
//!   `exp(a+b)`),
//! - radicals carry exponents in (0, 1), integer parts move to the coefficient,
//! - `cos(u)^m` for integer `m >= 2` is rewritten through `cos^2 = 1 - sin^2`,
//! - the base of an opaque power has rational content 1 and no common symbol
//!   or `exp` factor.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{self, is_integer, q_floor_i64, q_int, Q};
use super::ExprError;

/// Assumption flags attached to a symbol.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Assumptions {
    pub nonzero: bool,
    pub positive: bool,
}

/// A named scalar symbol. Identity is by name; flags only affect evaluation.
#[derive(Clone, Debug)]
pub struct Symbol {
    name: Arc<str>,
    assume: Assumptions,
}

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol { name: Arc::from(name), assume: Assumptions::default() }
    }

    pub fn with_assumptions(name: &str, assume: Assumptions) -> Self {
        Symbol { name: Arc::from(name), assume }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn assumptions(&self) -> Assumptions {
        self.assume
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}
impl Eq for Symbol {}
impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(&other.name)
    }
}
impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
    }
}
impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Irreducible factor of a monomial. Variant order is the kernel order used
/// for sorting terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Atom {
    Sym(Symbol),
    Radical(BigInt),
    Pow(Expr),
    Exp(Expr),
    Log(Expr),
    Sin(Expr),
    Cos(Expr),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Monomial(pub(crate) Vec<(Atom, Q)>);

impl Monomial {
    pub(crate) fn one() -> Self {
        Monomial(Vec::new())
    }
    pub(crate) fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

/// Exact symbolic scalar in canonical form. Cheap to clone.
#[derive(Clone)]
pub struct Expr(pub(crate) Arc<Vec<(Monomial, Q)>>);

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Expr {}
impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}
impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

/// Accumulates terms, merging equal monomials.
#[derive(Default)]
pub(crate) struct TermAcc(BTreeMap<Monomial, Q>);

impl TermAcc {
    pub(crate) fn add(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, e: &Expr, s: &Q) {
        for (m, c) in e.terms() {
            self.add(m.clone(), c * s);
        }
    }

    pub(crate) fn finish(self) -> Expr {
        Expr(Arc::new(self.0.into_iter().collect()))
    }
}

impl Expr {
    pub(crate) fn terms(&self) -> &[(Monomial, Q)] {
        &self.0
    }

    pub(crate) fn single(m: Monomial, c: Q) -> Expr {
        if c.is_zero() {
            Expr::zero()
        } else {
            Expr(Arc::new(vec![(m, c)]))
        }
    }

    pub fn zero() -> Expr {
        Expr(Arc::new(Vec::new()))
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn int(i: i64) -> Expr {
        Expr::rational(q_int(i))
    }

    /// `n/d` as an exact rational. Panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Expr {
        assert!(d != 0, "zero denominator");
        Expr::rational(Q::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(q: Q) -> Expr {
        Expr::single(Monomial::one(), q)
    }

    pub fn symbol(s: &Symbol) -> Expr {
        Expr::single(Monomial(vec![(Atom::Sym(s.clone()), Q::one())]), Q::one())
    }

    /// Shorthand for a symbol without assumption flags.
    pub fn var(name: &str) -> Expr {
        Expr::symbol(&Symbol::new(name))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Rational value if the expression is a constant rational.
    pub fn as_rational(&self) -> Option<Q> {
        match self.terms() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self.terms() {
            [(m, c)] if c.is_one() && m.0.len() == 1 && m.0[0].1.is_one() => match &m.0[0].0 {
                Atom::Sym(s) => Some(s),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    /// Sign of the leading coefficient (0 for the zero expression).
    pub(crate) fn leading_sign(&self) -> i32 {
        match self.terms().first() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    pub fn neg(&self) -> Expr {
        Expr(Arc::new(self.terms().iter().map(|(m, c)| (m.clone(), -c)).collect()))
    }

    pub fn scale(&self, s: &Q) -> Expr {
        if s.is_zero() {
            return Expr::zero();
        }
        Expr(Arc::new(self.terms().iter().map(|(m, c)| (m.clone(), c * s)).collect()))
    }

    pub fn add(&self, other: &Expr) -> Expr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (self.terms(), other.terms());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Expr(Arc::new(out))
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Expr::zero();
        }
        if let Some(q) = self.as_rational() {
            return other.scale(&q);
        }
        if let Some(q) = other.as_rational() {
            return self.scale(&q);
        }
        let mut acc = TermAcc::default();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let c = ca * cb;
                match mul_monomials_fast(ma, mb) {
                    Some(m) => acc.add(m, c),
                    None => {
                        let prod = normalize_factors(merge_factor_lists(&ma.0, &mb.0));
                        acc.add_scaled(&prod, &c);
                    }
                }
            }
        }
        acc.finish()
    }

    /// `self^e` for a rational exponent. Fails for a zero base with a
    /// negative exponent.
    pub fn pow(&self, e: &Q) -> Result<Expr, ExprError> {
        if e.is_zero() {
            return Ok(Expr::one());
        }
        if self.is_zero() {
            return if e.is_positive() { Ok(Expr::zero()) } else { Err(ExprError::ZeroDivisor) };
        }
        if e.is_one() {
            return Ok(self.clone());
        }
        if self.num_terms() == 1 {
            let (m, c) = &self.terms()[0];
            return Ok(pow_single_term(m, c, e));
        }
        if is_integer(e) && e.is_positive() {
            let k = e.to_integer().to_u64().ok_or(ExprError::ExponentRange)?;
            return Ok(self.powi_expand(k));
        }
        Ok(pow_sum(self, e))
    }

    pub fn powi(&self, k: i64) -> Result<Expr, ExprError> {
        self.pow(&q_int(k))
    }

    fn powi_expand(&self, mut k: u64) -> Expr {
        let mut base = self.clone();
        let mut acc = Expr::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn recip(&self) -> Result<Expr, ExprError> {
        self.pow(&q_int(-1))
    }

    pub fn div(&self, other: &Expr) -> Result<Expr, ExprError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn sqrt(&self) -> Result<Expr, ExprError> {
        self.pow(&Q::new(BigInt::from(1), BigInt::from(2)))
    }

    pub fn exp(&self) -> Expr {
        if self.is_zero() {
            return Expr::one();
        }
        Expr::single(Monomial(vec![(Atom::Exp(self.clone()), Q::one())]), Q::one())
    }

    pub fn log(&self) -> Result<Expr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::LogOfZero);
        }
        if self.is_one() {
            return Ok(Expr::zero());
        }
        if let [(m, c)] = self.terms() {
            if c.is_one() && m.0.len() == 1 {
                if let Atom::Exp(arg) = &m.0[0].0 {
                    return Ok(arg.clone());
                }
            }
        }
        Ok(Expr::single(Monomial(vec![(Atom::Log(self.clone()), Q::one())]), Q::one()))
    }

    pub fn sin(&self) -> Expr {
        if self.is_zero() {
            return Expr::zero();
        }
        if self.leading_sign() < 0 {
            return self.neg().sin().neg();
        }
        Expr::single(Monomial(vec![(Atom::Sin(self.clone()), Q::one())]), Q::one())
    }

    pub fn cos(&self) -> Expr {
        if self.is_zero() {
            return Expr::one();
        }
        if self.leading_sign() < 0 {
            return self.neg().cos();
        }
        Expr::single(Monomial(vec![(Atom::Cos(self.clone()), Q::one())]), Q::one())
    }

    pub fn tan(&self) -> Result<Expr, ExprError> {
        self.sin().div(&self.cos())
    }

    /// True when no symbol occurs.
    pub fn is_constant(&self) -> bool {
        self.terms().iter().all(|(m, _)| m.0.iter().all(|(a, _)| atom_is_constant(a)))
    }

    /// True when `s` occurs anywhere in the expression.
    pub fn depends_on(&self, s: &Symbol) -> bool {
        self.terms().iter().any(|(m, _)| m.0.iter().any(|(a, _)| atom_depends_on(a, s)))
    }

    /// All free symbols, sorted by name.
    pub fn free_symbols(&self) -> Vec<Symbol> {
        let mut out = std::collections::BTreeSet::new();
        collect_symbols(self, &mut out);
        out.into_iter().collect()
    }

    /// Rough size measure (number of atoms, recursively).
    pub fn size(&self) -> usize {
        self.terms()
            .iter()
            .map(|(m, _)| {
                1 + m
                    .0
                    .iter()
                    .map(|(a, _)| match a {
                        Atom::Sym(_) | Atom::Radical(_) => 1,
                        Atom::Pow(e) | Atom::Exp(e) | Atom::Log(e) | Atom::Sin(e) | Atom::Cos(e) => {
                            1 + e.size()
                        }
                    })
                    .sum::<usize>()
            })
            .sum()
    }
}

fn atom_is_constant(a: &Atom) -> bool {
    match a {
        Atom::Sym(_) => false,
        Atom::Radical(_) => true,
        Atom::Pow(e) | Atom::Exp(e) | Atom::Log(e) | Atom::Sin(e) | Atom::Cos(e) => e.is_constant(),
    }
}

pub(crate) fn atom_depends_on(a: &Atom, s: &Symbol) -> bool {
    match a {
        Atom::Sym(x) => x == s,
        Atom::Radical(_) => false,
        Atom::Pow(e) | Atom::Exp(e) | Atom::Log(e) | Atom::Sin(e) | Atom::Cos(e) => e.depends_on(s),
    }
}

fn collect_symbols(e: &Expr, out: &mut std::collections::BTreeSet<Symbol>) {
    for (m, _) in e.terms() {
        for (a, _) in &m.0 {
            match a {
                Atom::Sym(s) => {
                    out.insert(s.clone());
                }
                Atom::Radical(_) => {}
                Atom::Pow(x) | Atom::Exp(x) | Atom::Log(x) | Atom::Sin(x) | Atom::Cos(x) => {
                    collect_symbols(x, out)
                }
            }
        }
    }
}

/// True if the atom needs the slow normalization path whenever its exponent
/// changes.
fn atom_is_special(a: &Atom) -> bool {
    matches!(a, Atom::Radical(_) | Atom::Pow(_) | Atom::Exp(_) | Atom::Cos(_))
}

/// Product of two monomials when only symbols, logs and sines are involved on
/// overlapping atoms. Returns `None` when the general path is required.
fn mul_monomials_fast(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    if a.is_one() {
        return Some(b.clone());
    }
    if b.is_one() {
        return Some(a.clone());
    }
    let (x, y) = (&a.0, &b.0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let mut saw_exp = false;
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            Ordering::Less => {
                if matches!(x[i].0, Atom::Exp(_)) {
                    if saw_exp {
                        return None;
                    }
                    saw_exp = true;
                }
                out.push(x[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                if matches!(y[j].0, Atom::Exp(_)) {
                    if saw_exp {
                        return None;
                    }
                    saw_exp = true;
                }
                out.push(y[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                if atom_is_special(&x[i].0) {
                    return None;
                }
                let e = &x[i].1 + &y[j].1;
                if !e.is_zero() {
                    out.push((x[i].0.clone(), e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    for t in x[i..].iter().chain(y[j..].iter()) {
        if matches!(t.0, Atom::Exp(_)) {
            if saw_exp {
                return None;
            }
            saw_exp = true;
        }
        out.push(t.clone());
    }
    Some(Monomial(out))
}

fn merge_factor_lists(a: &[(Atom, Q)], b: &[(Atom, Q)]) -> Vec<(Atom, Q)> {
    let mut v: Vec<(Atom, Q)> = a.iter().chain(b.iter()).cloned().collect();
    v.sort_by(|p, q| p.0.cmp(&q.0));
    v
}

/// Normalize an arbitrary (sorted or unsorted) factor list into an Expr.
pub(crate) fn normalize_factors(mut list: Vec<(Atom, Q)>) -> Expr {
    list.sort_by(|p, q| p.0.cmp(&q.0));
    // merge equal atoms and collect exp arguments
    let mut merged: Vec<(Atom, Q)> = Vec::with_capacity(list.len());
    let mut exp_arg = Expr::zero();
    let mut has_exp = false;
    for (a, e) in list {
        if let Atom::Exp(arg) = &a {
            exp_arg = exp_arg.add(&arg.scale(&e));
            has_exp = true;
            continue;
        }
        if let Some(last) = merged.last_mut() {
            if last.0 == a {
                last.1 += e;
                continue;
            }
        }
        merged.push((a, e));
    }
    let mut coef = Q::one();
    let mut kept: Vec<(Atom, Q)> = Vec::with_capacity(merged.len() + 1);
    let mut expansions: Vec<Expr> = Vec::new();
    for (a, e) in merged {
        if e.is_zero() {
            continue;
        }
        match a {
            Atom::Radical(p) => {
                let fl = q_floor_i64(&e);
                coef *= rational::q_powi(&Q::from_integer(p.clone()), fl);
                let frac = &e - q_int(fl);
                if !frac.is_zero() {
                    kept.push((Atom::Radical(p), frac));
                }
            }
            Atom::Pow(base) if e >= Q::one() => {
                let fl = q_floor_i64(&e);
                expansions.push(base.powi_expand(fl as u64));
                let frac = &e - q_int(fl);
                if !frac.is_zero() {
                    kept.push((Atom::Pow(base), frac));
                }
            }
            Atom::Cos(u) if is_integer(&e) && e >= q_int(2) => {
                let m = q_floor_i64(&e);
                let half = (m / 2) as u64;
                if m % 2 == 1 {
                    kept.push((Atom::Cos(u.clone()), Q::one()));
                }
                let s = u.sin();
                let one_minus = Expr::one().sub(&s.mul(&s));
                expansions.push(one_minus.powi_expand(half));
            }
            other => kept.push((other, e)),
        }
    }
    if has_exp && !exp_arg.is_zero() {
        kept.push((Atom::Exp(exp_arg), Q::one()));
    }
    kept.sort_by(|p, q| p.0.cmp(&q.0));
    let mut out = Expr::single(Monomial(kept), coef);
    for x in expansions {
        out = out.mul(&x);
    }
    out
}

/// `(c * m)^e` for a single term. Symbols are treated as positive, so the
/// power distributes over the factors.
fn pow_single_term(m: &Monomial, c: &Q, e: &Q) -> Expr {
    let mut factors: Vec<(Atom, Q)> = Vec::with_capacity(m.0.len() + 2);
    let coef;
    if is_integer(e) {
        coef = rational::q_powi(c, e.to_integer().to_i64().expect("exponent"));
    } else {
        let (cq, rads) = rational::positive_rational_pow(&c.abs(), e);
        let mut sign_fix = cq;
        for (b, x) in rads {
            factors.push((Atom::Radical(b), x));
        }
        if c.is_negative() {
            if e.denom().is_odd() {
                if e.numer().is_odd() {
                    sign_fix = -sign_fix;
                }
            } else {
                // not real in general: keep the negated monomial under an opaque power
                let base = Expr::single(m.clone(), -Q::one());
                factors.push((Atom::Pow(base), e.clone()));
                return normalize_factors(factors).scale(&sign_fix);
            }
        }
        coef = sign_fix;
    }
    for (a, x) in &m.0 {
        factors.push((a.clone(), x * e));
    }
    normalize_factors(factors).scale(&coef)
}

/// `S^e` for a sum with at least two terms and a non-positive-integer exponent.
fn pow_sum(s: &Expr, e: &Q) -> Expr {
    let (content, mono, base) = split_content(s, is_integer(e));
    let mut out = Expr::rational(Q::one());
    if !content.is_one() {
        out = Expr::rational(content).pow(e).expect("nonzero content");
    }
    if !mono.is_one() {
        out = out.mul(&pow_single_term(&mono, &Q::one(), e));
    }
    out.mul(&normalize_factors(vec![(Atom::Pow(base), e.clone())]))
}

/// Factor a sum as `content * mono * base`, where `base` has coprime integer
/// coefficients and no common symbol, radical, sin, log or exp factor. With
/// `fix_sign` the leading coefficient of `base` is made positive.
fn split_content(s: &Expr, fix_sign: bool) -> (Q, Monomial, Expr) {
    let terms = s.terms();
    let coefs: Vec<&Q> = terms.iter().map(|(_, c)| c).collect();
    let mut content = rational::content(&coefs);
    if fix_sign && terms[0].1.is_negative() {
        content = -content;
    }
    // common factors
    let mut common: Vec<(Atom, Q)> = Vec::new();
    for (a, e) in &terms[0].0 .0 {
        let eligible = matches!(a, Atom::Sym(_) | Atom::Radical(_) | Atom::Log(_) | Atom::Sin(_) | Atom::Exp(_));
        if !eligible {
            continue;
        }
        let mut min = e.clone();
        let mut everywhere = true;
        for (m, _) in &terms[1..] {
            match m.0.iter().find(|(b, _)| b == a) {
                Some((_, f)) => {
                    if f < &min {
                        min = f.clone();
                    }
                }
                None => {
                    everywhere = false;
                    break;
                }
            }
        }
        if everywhere {
            common.push((a.clone(), min));
        }
    }
    if common.is_empty() && content.is_one() {
        return (content, Monomial::one(), s.clone());
    }
    let inv_content = content.recip();
    let mut acc = TermAcc::default();
    for (m, c) in terms {
        let mut f = Vec::with_capacity(m.0.len());
        for (a, e) in &m.0 {
            match common.iter().find(|(b, _)| b == a) {
                Some((_, min)) => {
                    let d = e - min;
                    if !d.is_zero() {
                        f.push((a.clone(), d));
                    }
                }
                None => f.push((a.clone(), e.clone())),
            }
        }
        acc.add(Monomial(f), c * &inv_content);
    }
    (content, Monomial(common), acc.finish())
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

/// Shape of an expression when read as an ordinary tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Rational(Q),
    Symbol(Symbol),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Expr, Q),
    Exp(Expr),
    Log(Expr),
    Sin(Expr),
    Cos(Expr),
}

impl Expr {
    /// Tree view of the canonical form.
    pub fn node(&self) -> Node {
        match self.terms() {
            [] => Node::Rational(Q::zero()),
            [(m, c)] => {
                if m.is_one() {
                    return Node::Rational(c.clone());
                }
                let mut parts: Vec<Expr> = Vec::new();
                if !c.is_one() {
                    parts.push(Expr::rational(c.clone()));
                }
                for (a, e) in &m.0 {
                    parts.push(Expr::single(Monomial(vec![(a.clone(), e.clone())]), Q::one()));
                }
                if parts.len() == 1 {
                    let (a, e) = &m.0[0];
                    if !e.is_one() {
                        return Node::Power(atom_base(a), e.clone());
                    }
                    return match a {
                        Atom::Sym(s) => Node::Symbol(s.clone()),
                        Atom::Exp(x) => Node::Exp(x.clone()),
                        Atom::Log(x) => Node::Log(x.clone()),
                        Atom::Sin(x) => Node::Sin(x.clone()),
                        Atom::Cos(x) => Node::Cos(x.clone()),
                        Atom::Radical(_) | Atom::Pow(_) => Node::Power(atom_base(a), e.clone()),
                    };
                }
                Node::Product(parts)
            }
            many => Node::Sum(many.iter().map(|(m, c)| Expr::single(m.clone(), c.clone())).collect()),
        }
    }
}

/// The base expression an atom stands for (the atom at exponent 1).
pub(crate) fn atom_base(a: &Atom) -> Expr {
    match a {
        Atom::Radical(p) => Expr::rational(Q::from_integer(p.clone())),
        Atom::Pow(s) => s.clone(),
        other => Expr::single(Monomial(vec![(other.clone(), Q::one())]), Q::one()),
    }
}

impl std::ops::Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        Expr::add(self, rhs)
    }
}
impl std::ops::Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        Expr::sub(self, rhs)
    }
}
impl std::ops::Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::mul(self, rhs)
    }
}
impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}
impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::add(&self, &rhs)
    }
}
impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sub(&self, &rhs)
    }
}
impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::mul(&self, &rhs)
    }
}
impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}
impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        let mut acc = TermAcc::default();
        for e in iter {
            acc.add_scaled(&e, &Q::one());
        }
        acc.finish()
    }
}
impl<'a> std::iter::Sum<&'a Expr> for Expr {
    fn sum<I: Iterator<Item = &'a Expr>>(iter: I) -> Expr {
        let mut acc = TermAcc::default();
        for e in iter {
            acc.add_scaled(e, &Q::one());
        }
        acc.finish()
    }
}
impl From<i64> for Expr {
    fn from(i: i64) -> Expr {
        Expr::int(i)
    }
}

impl Default for Expr {
    fn default() -> Expr {
        Expr::zero()
    }
}
