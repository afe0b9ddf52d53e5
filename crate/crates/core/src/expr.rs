//! One-variable expressions: parsing, printing, evaluation and Taylor-mode
//! derivatives.
//!
//! Grammar (whitespace-insensitive, identifiers case-sensitive):
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = primary [ "^" unary ] ;              (* right-associative *)
//! primary = number | "x" | "pi" | "e"
//!         | func "(" expr ")" | "(" expr ")" ;
//! func    = "exp" | "log" | "sin" | "cos" | "tan" | "sqrt" ;
//! number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//!         | "." digits [ exponent ] ;
//! ```
//!
//! `-x^2` parses as `-(x^2)`.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::error::{Error, EvalFailure, Result};
use crate::integrand::{Integrand, MAX_ORDER};
use crate::jet::TaylorJet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sqrt,
}

impl Func {
    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Const(Constant),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

const PREC_NEG: u8 = 3;
const PREC_ATOM: u8 = 5;

impl Expr {
    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Neg(_) => PREC_NEG,
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Num(v) if *v < 0.0 || v.is_sign_negative() => PREC_NEG,
            _ => PREC_ATOM,
        }
    }

    /// Whether the expression mentions the variable.
    pub fn depends_on_x(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Num(_) | Expr::Const(_) => false,
            Expr::Neg(e) | Expr::Call(_, e) => e.depends_on_x(),
            Expr::Bin(_, l, r) => l.depends_on_x() || r.depends_on_x(),
        }
    }

    /// Evaluate at `x` in binary64.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let v = self.value(x).map_err(|reason| Error::Evaluation { abscissa: x, reason })?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { abscissa: x, reason: EvalFailure::NonFinite })
        }
    }

    fn value(&self, x: f64) -> core::result::Result<f64, EvalFailure> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Const(c) => constant(*c),
            Expr::Neg(e) => -e.value(x)?,
            Expr::Bin(op, l, r) => {
                let a = l.value(x)?;
                match op {
                    BinOp::Add => a + r.value(x)?,
                    BinOp::Sub => a - r.value(x)?,
                    BinOp::Mul => a * r.value(x)?,
                    BinOp::Div => {
                        let b = r.value(x)?;
                        if b == 0.0 {
                            return Err(EvalFailure::DivisionByZero);
                        }
                        a / b
                    }
                    BinOp::Pow => pow_value(a, r, x)?,
                }
            }
            Expr::Call(f, e) => {
                let a = e.value(x)?;
                match f {
                    Func::Exp => libm::exp(a),
                    Func::Log if a <= 0.0 => return Err(EvalFailure::LogOfNonPositive),
                    Func::Log => libm::log(a),
                    Func::Sin => libm::sin(a),
                    Func::Cos => libm::cos(a),
                    Func::Tan => libm::tan(a),
                    Func::Sqrt if a < 0.0 => return Err(EvalFailure::SqrtOfNegative),
                    Func::Sqrt => libm::sqrt(a),
                }
            }
        })
    }

    /// Taylor coefficients at `x0` up to order 6.
    pub fn jet(&self, x0: f64) -> Result<TaylorJet> {
        self.jet_inner(x0)
            .and_then(TaylorJet::checked)
            .map_err(|reason| Error::Evaluation { abscissa: x0, reason })
    }

    fn jet_inner(&self, x0: f64) -> core::result::Result<TaylorJet, EvalFailure> {
        Ok(match self {
            Expr::Num(v) => TaylorJet::constant(*v),
            Expr::Var => TaylorJet::variable(x0),
            Expr::Const(c) => TaylorJet::constant(constant(*c)),
            Expr::Neg(e) => -e.jet_inner(x0)?,
            Expr::Bin(op, l, r) => {
                let a = l.jet_inner(x0)?;
                match op {
                    BinOp::Add => a + r.jet_inner(x0)?,
                    BinOp::Sub => a - r.jet_inner(x0)?,
                    BinOp::Mul => a * r.jet_inner(x0)?,
                    BinOp::Div => a.checked_div(r.jet_inner(x0)?)?,
                    BinOp::Pow => pow_jet(a, r, x0)?,
                }
            }
            Expr::Call(f, e) => {
                let a = e.jet_inner(x0)?;
                match f {
                    Func::Exp => a.exp()?,
                    Func::Log => a.ln()?,
                    Func::Sin => a.sin_cos().0,
                    Func::Cos => a.sin_cos().1,
                    Func::Tan => a.tan()?,
                    Func::Sqrt => a.sqrt()?,
                }
            }
        })
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(v) => write!(f, "{v}")?,
            Expr::Var => f.write_str("x")?,
            Expr::Const(Constant::Pi) => f.write_str("pi")?,
            Expr::Const(Constant::E) => f.write_str("e")?,
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.write_prec(f, PREC_NEG)?;
            }
            Expr::Bin(BinOp::Pow, l, r) => {
                l.write_prec(f, PREC_ATOM)?;
                f.write_str("^")?;
                r.write_prec(f, PREC_NEG)?;
            }
            Expr::Bin(op, l, r) => {
                let p = op.precedence();
                l.write_prec(f, p)?;
                write!(f, " {} ", op.symbol())?;
                r.write_prec(f, p + 1)?;
            }
            Expr::Call(func, e) => {
                write!(f, "{}(", func.name())?;
                e.write_prec(f, 0)?;
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

fn constant(c: Constant) -> f64 {
    match c {
        Constant::Pi => core::f64::consts::PI,
        Constant::E => core::f64::consts::E,
    }
}

/// Exponent that does not depend on `x` and is an integer of moderate size.
fn integer_exponent(r: &Expr) -> Option<i64> {
    if r.depends_on_x() {
        return None;
    }
    let v = r.value(0.0).ok()?;
    (v == libm::trunc(v) && libm::fabs(v) <= 1024.0).then_some(v as i64)
}

fn pow_value(a: f64, r: &Expr, x: f64) -> core::result::Result<f64, EvalFailure> {
    if let Some(n) = integer_exponent(r) {
        if a == 0.0 && n < 0 {
            return Err(EvalFailure::DivisionByZero);
        }
        return Ok(powi(a, n));
    }
    let b = r.value(x)?;
    if a < 0.0 || (a == 0.0 && b <= 0.0) {
        return Err(EvalFailure::PowDomain);
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(libm::exp(b * libm::log(a)))
}

fn powi(a: f64, n: i64) -> f64 {
    let mut base = a;
    let mut acc = 1.0;
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        e >>= 1;
        base *= base;
    }
    if n < 0 {
        1.0 / acc
    } else {
        acc
    }
}

fn pow_jet(a: TaylorJet, r: &Expr, x0: f64) -> core::result::Result<TaylorJet, EvalFailure> {
    if let Some(n) = integer_exponent(r) {
        return a.powi(n);
    }
    if !r.depends_on_x() {
        return a.powf(r.value(x0)?);
    }
    let b = r.jet_inner(x0)?;
    if a.value() <= 0.0 {
        return Err(EvalFailure::PowDomain);
    }
    (b * a.ln()?).exp()
}

/// A parse failure at a byte offset into the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnknownIdentifier(String),
    ExpectedParen(String),
    BadNumber(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "syntax error at offset {}: unexpected end of input", self.offset)
            }
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "syntax error at offset {}: unexpected character '{c}'", self.offset)
            }
            ParseErrorKind::UnexpectedToken(t) => {
                write!(f, "syntax error at offset {}: unexpected '{t}'", self.offset)
            }
            ParseErrorKind::UnknownIdentifier(id) => {
                write!(f, "unknown identifier '{id}' at offset {}", self.offset)
            }
            ParseErrorKind::ExpectedParen(func) => {
                write!(f, "syntax error at offset {}: expected '(' after '{func}'", self.offset)
            }
            ParseErrorKind::BadNumber(s) => {
                write!(f, "syntax error at offset {}: malformed number '{s}'", self.offset)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Num(f64),
    Ident(&'a str),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and its byte offset.
    fn next(&mut self) -> core::result::Result<(Tok<'a>, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let Some(&c) = bytes.get(start) else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == b'.' {
            let mut i = start;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
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
            let text = &self.src[start..i];
            self.pos = i;
            return text
                .parse::<f64>()
                .map(|v| (Tok::Num(v), start))
                .map_err(|_| ParseError {
                    offset: start,
                    kind: ParseErrorKind::BadNumber(text.into()),
                });
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let mut i = start;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            self.pos = i;
            return Ok((Tok::Ident(&self.src[start..i]), start));
        }
        let ch = self.src[start..].chars().next().expect("non-empty");
        if "+-*/^()".contains(ch) {
            self.pos += 1;
            Ok((Tok::Sym(ch), start))
        } else {
            Err(ParseError { offset: start, kind: ParseErrorKind::UnexpectedChar(ch) })
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok<'a>,
    at: usize,
}

type PResult<T> = core::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn bump(&mut self) -> PResult<()> {
        let (t, at) = self.lexer.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn unexpected(&self) -> ParseError {
        let kind = match &self.tok {
            Tok::End => ParseErrorKind::UnexpectedEnd,
            Tok::Num(_) => ParseErrorKind::UnexpectedToken("number".into()),
            Tok::Ident(s) => ParseErrorKind::UnexpectedToken((*s).into()),
            Tok::Sym(c) => ParseErrorKind::UnexpectedToken(alloc::format!("{c}")),
        };
        ParseError { offset: self.at, kind }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.tok == Tok::Sym(c) {
            self.bump()
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            lhs = Expr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.tok == Tok::Sym('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.primary()?;
        if self.tok == Tok::Sym('^') {
            self.bump()?;
            return Ok(Expr::bin(BinOp::Pow, base, self.unary()?));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expr::Num(v))
            }
            Tok::Sym('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                let leaf = match name {
                    "x" => Some(Expr::Var),
                    "pi" => Some(Expr::Const(Constant::Pi)),
                    "e" => Some(Expr::Const(Constant::E)),
                    _ => None,
                };
                if let Some(leaf) = leaf {
                    self.bump()?;
                    return Ok(leaf);
                }
                let func = Func::from_name(name).ok_or(ParseError {
                    offset: at,
                    kind: ParseErrorKind::UnknownIdentifier(name.into()),
                })?;
                self.bump()?;
                if self.tok != Tok::Sym('(') {
                    return Err(ParseError {
                        offset: self.at,
                        kind: ParseErrorKind::ExpectedParen(name.into()),
                    });
                }
                self.bump()?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(Expr::call(func, arg))
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse an expression in `x`.
pub fn parse(text: &str) -> core::result::Result<Expr, ParseError> {
    let mut p = Parser { lexer: Lexer { src: text, pos: 0 }, tok: Tok::End, at: 0 };
    p.bump()?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Taylor coefficients of `e` at `x0`; `max_order` must be in `1..=6`.
pub fn derivatives(e: &Expr, x0: f64, max_order: usize) -> Result<TaylorJet> {
    if !(1..=MAX_ORDER).contains(&max_order) {
        return Err(Error::Capability { requested: max_order, available: MAX_ORDER });
    }
    e.jet(x0)
}

/// An integrand defined by an expression, with derivatives from Taylor jets.
/// An optional separate expression overrides the first derivative only.
#[derive(Debug, Clone, PartialEq)]
pub struct ExprIntegrand {
    f: Expr,
    df: Option<Expr>,
}

impl ExprIntegrand {
    pub fn new(f: Expr) -> Self {
        ExprIntegrand { f, df: None }
    }

    pub fn with_first_derivative(f: Expr, df: Expr) -> Self {
        ExprIntegrand { f, df: Some(df) }
    }

    pub fn parse(text: &str) -> core::result::Result<Self, ParseError> {
        Ok(Self::new(parse(text)?))
    }

    pub fn expr(&self) -> &Expr {
        &self.f
    }
}

impl Integrand for ExprIntegrand {
    fn eval(&self, x: f64) -> Result<f64> {
        self.f.eval(x)
    }

    fn max_order(&self) -> usize {
        MAX_ORDER
    }

    fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        match (order, &self.df) {
            (0, _) => self.f.eval(x),
            (1, Some(df)) => df.eval(x),
            (k, _) if k <= MAX_ORDER => Ok(self.f.jet(x)?.derivative(k)),
            (k, _) => Err(Error::Capability { requested: k, available: MAX_ORDER }),
        }
    }
}
