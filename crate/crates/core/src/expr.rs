//! Expressions for algebra-valued functions.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" int)?
//! int    := "-"? digits | "(" "-"? digits ")"
//! atom   := number | number "i" | "i" | "rho" | "z" | "tau" | "t"
//!         | "(" expr ")" | ("exp" | "ln" | "inv") "(" expr ")"
//! ```
//!
//! `z` is a point of the subspace `E`; `tau` is a boundary point and `t` the curve
//! parameter in `[0, 1)`. Expressions that only mention `z` are *field* expressions:
//! built from algebra operations they are monogenic wherever they are defined, and
//! [`Expr::differentiate`] returns their derivative.

use std::fmt;

use crate::algebra::DualComplex;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    Tau,
    T,
}

impl Var {
    fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::Tau => "tau",
            Var::T => "t",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Inv,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Inv => "inv",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Decimal real literal.
    Real(f64),
    /// Literal written `<number>i`.
    Imag(f64),
    /// The constant `i`.
    ImagUnit,
    /// The constant `rho`.
    Rho,
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Variable bindings for [`Expr::eval`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Env {
    pub z: Option<DualComplex>,
    pub tau: Option<DualComplex>,
    pub t: Option<f64>,
}

impl Env {
    pub fn field(z: DualComplex) -> Self {
        Env { z: Some(z), ..Env::default() }
    }

    pub fn boundary(tau: DualComplex, t: f64) -> Self {
        Env { tau: Some(tau), t: Some(t), ..Env::default() }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0, len: text.len() };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some((tok, at)) => Err(Error::Syntax { pos: at, msg: format!("unexpected {}", tok.describe()) }),
        }
    }

    pub fn eval(&self, env: &Env) -> Result<DualComplex> {
        Ok(match self {
            Expr::Real(x) => DualComplex::real(*x),
            Expr::Imag(y) => DualComplex::from_parts(0.0, *y, 0.0, 0.0),
            Expr::ImagUnit => DualComplex::I,
            Expr::Rho => DualComplex::RHO,
            Expr::Var(Var::Z) => env.z.ok_or(Error::UnboundVariable("z"))?,
            Expr::Var(Var::Tau) => env.tau.ok_or(Error::UnboundVariable("tau"))?,
            Expr::Var(Var::T) => DualComplex::real(env.t.ok_or(Error::UnboundVariable("t"))?),
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => a.eval(env)?.div(&b.eval(env)?)?,
            Expr::Pow(a, n) => a.eval(env)?.powi(*n)?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Call(Func::Exp, a) => a.eval(env)?.exp()?,
            Expr::Call(Func::Ln, a) => a.eval(env)?.ln()?,
            Expr::Call(Func::Inv, a) => a.eval(env)?.inv()?,
        })
    }

    /// Shorthand for evaluating a field expression at `z`.
    pub fn eval_at(&self, z: DualComplex) -> Result<DualComplex> {
        self.eval(&Env::field(z))
    }

    pub fn mentions(&self, var: Var) -> bool {
        match self {
            Expr::Var(v) => *v == var,
            Expr::Real(_) | Expr::Imag(_) | Expr::ImagUnit | Expr::Rho => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.mentions(var) || b.mentions(var)
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Call(_, a) => a.mentions(var),
        }
    }

    /// True when the expression only uses `z`.
    pub fn is_field(&self) -> bool {
        !self.mentions(Var::Tau) && !self.mentions(Var::T)
    }

    pub fn is_constant(&self) -> bool {
        !self.mentions(Var::Z) && !self.mentions(Var::Tau) && !self.mentions(Var::T)
    }

    /// The value of a variable-free expression, if it has one.
    pub fn constant_value(&self) -> Option<DualComplex> {
        if self.is_constant() {
            self.eval(&Env::default()).ok()
        } else {
            None
        }
    }

    /// Formal derivative in `z` of a field expression.
    pub fn differentiate(&self) -> Result<Expr> {
        if !self.is_field() {
            return Err(Error::NotAFieldExpression);
        }
        Ok(self.derive())
    }

    fn derive(&self) -> Expr {
        match self {
            Expr::Real(_) | Expr::Imag(_) | Expr::ImagUnit | Expr::Rho => Expr::Real(0.0),
            Expr::Var(_) => Expr::Real(1.0),
            Expr::Add(a, b) => add(a.derive(), b.derive()),
            Expr::Sub(a, b) => sub(a.derive(), b.derive()),
            Expr::Mul(a, b) => add(mul(a.derive(), (**b).clone()), mul((**a).clone(), b.derive())),
            Expr::Div(a, b) => {
                // (a/b)' = a'/b − a·b'/b²
                let first = div(a.derive(), (**b).clone());
                let second = div(mul((**a).clone(), b.derive()), pow((**b).clone(), 2));
                sub(first, second)
            }
            Expr::Pow(a, n) => {
                if *n == 0 {
                    Expr::Real(0.0)
                } else {
                    mul(mul(Expr::Real(*n as f64), pow((**a).clone(), n - 1)), a.derive())
                }
            }
            Expr::Neg(a) => neg(a.derive()),
            Expr::Call(Func::Exp, a) => mul(self.clone(), a.derive()),
            Expr::Call(Func::Ln, a) => div(a.derive(), (**a).clone()),
            Expr::Call(Func::Inv, a) => neg(mul(a.derive(), pow((**a).clone(), -2))),
        }
    }
}

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Real(x) if *x == 0.0)
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Real(x) if *x == 1.0)
}

fn add(a: Expr, b: Expr) -> Expr {
    match (is_zero(&a), is_zero(&b)) {
        (true, _) => b,
        (_, true) => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (is_zero(&a), is_zero(&b)) {
        (_, true) => a,
        (true, _) => neg(b),
        _ => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) || is_zero(&b) {
        Expr::Real(0.0)
    } else if is_one(&a) {
        b
    } else if is_one(&b) {
        a
    } else {
        Expr::Mul(Box::new(a), Box::new(b))
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        Expr::Real(0.0)
    } else if is_one(&b) {
        a
    } else {
        Expr::Div(Box::new(a), Box::new(b))
    }
}

fn pow(a: Expr, n: i32) -> Expr {
    match n {
        0 => Expr::Real(1.0),
        1 => a,
        _ => Expr::Pow(Box::new(a), n),
    }
}

fn neg(a: Expr) -> Expr {
    if is_zero(&a) {
        a
    } else {
        Expr::Neg(Box::new(a))
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized; the output parses back to an identical tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Real(x) => write!(f, "{x:?}"),
            Expr::Imag(y) => write!(f, "{y:?}i"),
            Expr::ImagUnit => f.write_str("i"),
            Expr::Rho => f.write_str("rho"),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) if *n < 0 => write!(f, "{}^({n})", Paren(a)),
            Expr::Pow(a, n) => write!(f, "{}^{n}", Paren(a)),
            Expr::Neg(a) => write!(f, "-{}", Paren(a)),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// Wraps anything that is not already atomic in parentheses.
struct Paren<'a>(&'a Expr);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Expr::ImagUnit | Expr::Rho | Expr::Var(_) | Expr::Call(..) => write!(f, "{}", self.0),
            Expr::Real(x) if *x >= 0.0 => write!(f, "{}", self.0),
            e => write!(f, "({e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    ImagNum(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::ImagNum(x) => format!("number {x}i"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, i)),
            b'-' => out.push((Tok::Minus, i)),
            b'*' => out.push((Tok::Star, i)),
            b'/' => out.push((Tok::Slash, i)),
            b'^' => out.push((Tok::Caret, i)),
            b'(' => out.push((Tok::LParen, i)),
            b')' => out.push((Tok::RParen, i)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent part
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                let value: f64 = lit
                    .parse()
                    .map_err(|_| Error::Syntax { pos: start, msg: format!("malformed number `{lit}`") })?;
                let imag = i < bytes.len()
                    && bytes[i] == b'i'
                    && !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_');
                if imag {
                    i += 1;
                    out.push((Tok::ImagNum(value), start));
                } else {
                    out.push((Tok::Num(value), start));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let c = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<(Tok, usize)> {
        self.tokens.get(self.pos).cloned()
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |t| t.1)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|(t, _)| t == *tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", tok.describe())))
        }
    }

    fn unexpected(&self, msg: &str) -> Error {
        match self.peek() {
            Some((t, at)) => Error::Syntax { pos: at, msg: format!("{msg}, found {}", t.describe()) },
            None => Error::Syntax { pos: self.len, msg: format!("{msg}, found end of input") },
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&Tok::Slash) {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let n = self.int()?;
            Ok(Expr::Pow(Box::new(base), n))
        } else {
            Ok(base)
        }
    }

    fn int(&mut self) -> Result<i32> {
        let paren = self.eat(&Tok::LParen);
        let negative = self.eat(&Tok::Minus);
        let at = self.here();
        let n = match self.bump() {
            Some((Tok::Num(x), _)) if x.fract() == 0.0 && x.abs() <= i32::MAX as f64 => x as i32,
            Some((t, at)) => {
                return Err(Error::Syntax { pos: at, msg: format!("expected integer exponent, found {}", t.describe()) })
            }
            None => return Err(Error::Syntax { pos: at, msg: "expected integer exponent, found end of input".into() }),
        };
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(if negative { -n } else { n })
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.bump() {
            Some((Tok::Num(x), _)) => Ok(Expr::Real(x)),
            Some((Tok::ImagNum(y), _)) => Ok(Expr::Imag(y)),
            Some((Tok::LParen, _)) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some((Tok::Ident(name), pos)) => match name.as_str() {
                "i" => Ok(Expr::ImagUnit),
                "rho" => Ok(Expr::Rho),
                "z" => Ok(Expr::Var(Var::Z)),
                "tau" => Ok(Expr::Var(Var::Tau)),
                "t" => Ok(Expr::Var(Var::T)),
                "exp" | "ln" | "inv" => {
                    let func = match name.as_str() {
                        "exp" => Func::Exp,
                        "ln" => Func::Ln,
                        _ => Func::Inv,
                    };
                    self.expect(Tok::LParen)?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Call(func, Box::new(arg)))
                }
                _ => Err(Error::UnknownIdentifier { name, pos }),
            },
            Some((t, pos)) => Err(Error::Syntax { pos, msg: format!("expected operand, found {}", t.describe()) }),
            None => Err(Error::Syntax { pos: at, msg: "expected operand, found end of input".into() }),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Expr> {
        Expr::parse(s)
    }
}
