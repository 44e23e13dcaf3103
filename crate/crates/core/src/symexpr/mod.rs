//! Exact symbolic scalars.
//!
//! [`Expr`] values are immutable, always canonical, and cheap to clone. The
//! kernel set is fixed: rational powers, `exp`, `log`, `sin`, `cos`
//! (`sqrt` and `tan` are sugar).
//!
//! ```
//! use coqe::symexpr::{parse, Expr};
//! let e = parse("exp(x)*exp(x)").unwrap();
//! assert_eq!(e, parse("exp(2*x)").unwrap());
//! let d = e.diff(&coqe::symexpr::Symbol::new("x"));
//! assert_eq!(d, Expr::int(2) * e);
//! ```

mod diff;
mod equiv;
mod eval;
mod expr;
mod parse;
mod print;
pub(crate) mod rational;

pub use equiv::{equivalent, is_zero, simplify, Equivalence};
pub use eval::{Bindings, Value};
pub use expr::{Assumptions, Expr, Node, Symbol};
pub use parse::{parse, parse_with, SymbolTable};
pub use rational::Q;

pub(crate) use expr::{Atom, Monomial, TermAcc};

/// Errors raised while building or evaluating expressions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("exponent out of range")]
    ExponentRange,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { offset: usize, name: String },
    #[error("unknown symbol `{name}` at byte {offset}")]
    UnknownSymbol { offset: usize, name: String },
    #[error("malformed rational `{text}` at byte {offset}")]
    MalformedRational { offset: usize, text: String },
    #[error("exponent at byte {offset} is not a rational constant")]
    NonRationalExponent { offset: usize },
    #[error("domain error: {0}")]
    Domain(String),
}

/// Build a rational `n/d`. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    assert!(d != 0, "zero denominator");
    Q::new(n.into(), d.into())
}
