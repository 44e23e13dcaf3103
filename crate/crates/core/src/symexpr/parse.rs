//! Recursive-descent parser.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' exponent)?
//! exponent := factor            (must reduce to a rational constant)
//! base     := NUMBER | SYMBOL | FUNC '(' expr ')' | '(' expr ')' | '-' factor
//! ```
//!
//! `p/q` literals fall out of `term`. `^` binds tighter than unary minus, so
//! `-x^2` is `-(x^2)`.

use std::collections::BTreeMap;

use super::rational::parse_decimal;
use super::{Assumptions, Expr, ExprError, Symbol};

/// Symbols known to the parser, with their assumptions.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    symbols: BTreeMap<String, Symbol>,
    strict: bool,
}

impl SymbolTable {
    /// Permissive table: undeclared names become plain symbols.
    pub fn new() -> Self {
        Self::default()
    }

    /// Strict table: undeclared names are an error.
    pub fn strict() -> Self {
        SymbolTable { symbols: BTreeMap::new(), strict: true }
    }

    pub fn declare(&mut self, name: &str, a: Assumptions) -> Symbol {
        let s = Symbol::with_assumptions(name, a);
        self.symbols.insert(name.to_string(), s.clone());
        s
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }
}

/// Parse with a permissive table.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    parse_with(text, &SymbolTable::new())
}

/// Parse, resolving symbols through `table`.
pub fn parse_with(text: &str, table: &SymbolTable) -> Result<Expr, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, table };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

const FUNCS: [&str; 6] = ["exp", "log", "sin", "cos", "tan", "sqrt"];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a SymbolTable,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> ExprError {
        ExprError::Syntax { offset: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(ExprError::Syntax { offset: at, message: "division by zero".into() });
                    }
                    acc = acc.div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let ex = self.factor()?;
            let q = ex.as_rational().ok_or(ExprError::NonRationalExponent { offset: at })?;
            return base.pow(&q).map_err(|e| match e {
                ExprError::ZeroDivisor => ExprError::Syntax { offset: at, message: "zero to a negative power".into() },
                other => other,
            });
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        let c = self.peek().ok_or_else(|| self.syntax("unexpected end of input"))?;
        match c {
            b'-' => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            b'0'..=b'9' | b'.' => self.number(),
            c if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            _ => Err(self.syntax(&format!("unexpected character `{}`", c as char))),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let q = parse_decimal(text)
            .ok_or_else(|| ExprError::MalformedRational { offset: start, text: text.to_string() })?;
        Ok(Expr::rational(q))
    }

    fn ident(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if self.peek() == Some(b'(') {
            if !FUNCS.contains(&name) {
                return Err(ExprError::UnknownFunction { offset: start, name: name.to_string() });
            }
            self.pos += 1;
            let arg = self.expr()?;
            self.expect(b')')?;
            return match name {
                "exp" => Ok(arg.exp()),
                "log" => arg.log().map_err(|_| ExprError::Syntax { offset: start, message: "log(0)".into() }),
                "sin" => Ok(arg.sin()),
                "cos" => Ok(arg.cos()),
                "tan" => arg.tan(),
                _ => arg.sqrt(),
            };
        }
        if FUNCS.contains(&name) {
            return Err(ExprError::Syntax { offset: self.pos, message: format!("`{name}` needs an argument") });
        }
        match self.table.get(name) {
            Some(s) => Ok(Expr::symbol(s)),
            None if self.table.strict => Err(ExprError::UnknownSymbol { offset: start, name: name.to_string() }),
            None => Ok(Expr::var(name)),
        }
    }
}
