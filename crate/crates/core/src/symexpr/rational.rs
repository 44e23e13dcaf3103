//! Exact rational helpers: integer factorization for radicals and exact roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub(crate) fn q_int(i: i64) -> Q {
    Q::from_integer(BigInt::from(i))
}

/// Trial-division bound. Cofactors left over after it are kept whole.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Factor a positive integer into (base, multiplicity) pairs. Bases are primes
/// below the trial bound, possibly followed by one unfactored cofactor.
pub(crate) fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    debug_assert!(n.is_positive());
    let mut out = Vec::new();
    let mut rest = n.clone();
    if rest.is_one() {
        return out;
    }
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut k = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            k += 1;
        }
        if k > 0 {
            out.push((bp, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        out.push((rest, 1));
    }
    out
}

/// Integer power of a rational, negative exponents allowed for nonzero bases.
pub(crate) fn q_powi(base: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// floor of a rational as i64 (exponents are always small).
pub(crate) fn q_floor_i64(q: &Q) -> i64 {
    q.floor().to_integer().to_i64().expect("exponent out of range")
}

pub(crate) fn is_integer(q: &Q) -> bool {
    q.denom().is_one()
}

/// Split `c^e` for a positive rational `c` into an exact rational part and
/// radical factors `(base, exponent)` with exponents in (0, 1).
pub(crate) fn positive_rational_pow(c: &Q, e: &Q) -> (Q, Vec<(BigInt, Q)>) {
    debug_assert!(c.is_positive());
    if is_integer(e) {
        return (q_powi(c, e.to_integer().to_i64().expect("exponent")), Vec::new());
    }
    let mut coef = Q::one();
    let mut rads: Vec<(BigInt, Q)> = Vec::new();
    let mut push = |base: BigInt, k: i64| {
        let ex = e * q_int(k);
        let fl = q_floor_i64(&ex);
        let frac = &ex - q_int(fl);
        coef *= q_powi(&Q::from_integer(base.clone()), fl);
        if !frac.is_zero() {
            rads.push((base, frac));
        }
    };
    for (p, k) in factor(c.numer()) {
        push(p, k as i64);
    }
    for (p, k) in factor(c.denom()) {
        push(p, -(k as i64));
    }
    rads.sort();
    // merge equal bases (possible only for unfactored cofactors)
    let mut merged: Vec<(BigInt, Q)> = Vec::new();
    for (b, x) in rads {
        if let Some(last) = merged.last_mut() {
            if last.0 == b {
                last.1 += x;
                continue;
            }
        }
        merged.push((b, x));
    }
    let mut final_rads = Vec::new();
    for (b, x) in merged {
        let fl = q_floor_i64(&x);
        coef *= q_powi(&Q::from_integer(b.clone()), fl);
        let frac = x - q_int(fl);
        if !frac.is_zero() {
            final_rads.push((b, frac));
        }
    }
    (coef, final_rads)
}

/// Exact `c^e` when the result is rational.
pub(crate) fn exact_rational_pow(c: &Q, e: &Q) -> Option<Q> {
    if is_integer(e) {
        if c.is_zero() && e.is_negative() {
            return None;
        }
        return Some(q_powi(c, e.to_integer().to_i64()?));
    }
    if c.is_zero() {
        return if e.is_positive() { Some(Q::zero()) } else { None };
    }
    let den = e.denom().to_u32()?;
    let num = e.numer().to_i64()?;
    let neg = c.is_negative();
    if neg && den % 2 == 0 {
        return None;
    }
    let a = c.abs();
    let rn = a.numer().nth_root(den);
    let rd = a.denom().nth_root(den);
    if num_traits::pow(rn.clone(), den as usize) != *a.numer()
        || num_traits::pow(rd.clone(), den as usize) != *a.denom()
    {
        return None;
    }
    let mut root = Q::new(rn, rd);
    if neg {
        root = -root;
    }
    Some(q_powi(&root, num))
}

/// Greatest common divisor content of a list of rationals: positive `g` such
/// that every `q / g` is an integer and they are jointly coprime.
pub(crate) fn content(qs: &[&Q]) -> Q {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for q in qs {
        num = num.gcd(q.numer());
        den = den.lcm(q.denom());
    }
    if num.is_zero() {
        return Q::one();
    }
    Q::new(num, den)
}

pub(crate) fn q_to_f64(q: &Q) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // fall back to scaled division for huge values
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Best rational approximation used when a float must re-enter exact code.
pub(crate) fn parse_decimal(text: &str) -> Option<Q> {
    let (int, frac) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Some(Q::new(n, d))
}
