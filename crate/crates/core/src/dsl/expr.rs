//! Arithmetic expressions over base coordinates `x1..xn`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?          right-associative
//! atom  := number | 'x' digits | func '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

use thiserror::Error;

use crate::jet::{EvalError, Jet2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// 1-based coordinate index: `Var(2)` is `x2`.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at offset {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("`{name}` takes {expected} argument(s), got {found} (offset {offset})")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
        offset: usize,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownFunction { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::Arity { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(Tok, usize), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == b'.' {
            return self.number(start).map(|v| (Tok::Num(v), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        if b"+-*/^(),".contains(&c) {
            self.pos += 1;
            return Ok((Tok::Op(c as char), start));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(ParseError::Syntax {
            offset: start,
            message: format!("unexpected character `{ch}`"),
        })
    }

    fn number(&mut self, start: usize) -> Result<f64, ParseError> {
        let bytes = self.src.as_bytes();
        let digits = |pos: &mut usize| {
            let s = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            *pos - s
        };
        let mut n = digits(&mut self.pos);
        if self.pos < bytes.len() && bytes[self.pos] == b'.' {
            self.pos += 1;
            n += digits(&mut self.pos);
        }
        if n == 0 {
            return Err(ParseError::Syntax {
                offset: start,
                message: "malformed number".into(),
            });
        }
        if self.pos < bytes.len() && (bytes[self.pos] == b'e' || bytes[self.pos] == b'E') {
            let mut p = self.pos + 1;
            if p < bytes.len() && (bytes[p] == b'+' || bytes[p] == b'-') {
                p += 1;
            }
            if digits(&mut p) == 0 {
                return Err(ParseError::Syntax {
                    offset: self.pos,
                    message: "malformed exponent".into(),
                });
            }
            self.pos = p;
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map_err(|e| ParseError::Syntax {
                offset: start,
                message: e.to_string(),
            })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, at) = lexer.next_token()?;
        Ok(Self { lexer, tok, at })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, at) = self.lexer.next_token()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.tok == Tok::Op(op) {
            self.bump()
        } else {
            Err(self.unexpected(&format!("expected `{op}`")))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let found = match &self.tok {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        };
        ParseError::Syntax {
            offset: self.at,
            message: format!("{what}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.tok {
                Tok::Op('+') => Expr::Add,
                Tok::Op('-') => Expr::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = ctor(Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.tok {
                Tok::Op('*') => Expr::Mul,
                Tok::Op('/') => Expr::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.unary()?;
            lhs = ctor(Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.tok == Tok::Op('^') {
            self.bump()?;
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expr::Num(v))
            }
            Tok::Op('(') => {
                self.bump()?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let start = self.at;
                self.bump()?;
                if self.tok == Tok::Op('(') {
                    return self.call(name, start);
                }
                if let Some(k) = coordinate_index(&name) {
                    return Ok(Expr::Var(k));
                }
                if Func::from_name(&name).is_some() {
                    return Err(ParseError::Arity {
                        name,
                        expected: 1,
                        found: 0,
                        offset: start,
                    });
                }
                Err(ParseError::UnknownIdentifier {
                    name,
                    offset: start,
                })
            }
            _ => Err(self.unexpected("expected an operand")),
        }
    }

    fn call(&mut self, name: String, start: usize) -> Result<Expr, ParseError> {
        self.bump()?; // '('
        let mut args = Vec::new();
        if self.tok != Tok::Op(')') {
            args.push(self.expr()?);
            while self.tok == Tok::Op(',') {
                self.bump()?;
                args.push(self.expr()?);
            }
        }
        self.expect(')')?;
        let Some(func) = Func::from_name(&name) else {
            return Err(ParseError::UnknownFunction {
                name,
                offset: start,
            });
        };
        if args.len() != 1 {
            return Err(ParseError::Arity {
                name,
                expected: 1,
                found: args.len(),
                offset: start,
            });
        }
        Ok(Expr::Call(func, Box::new(args.pop().unwrap())))
    }
}

fn coordinate_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    digits.parse().ok()
}

/// Parse an expression; the whole input must be consumed.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.unexpected("expected end of input"));
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

// Binding strength used by the printer.
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Num(_) | Expr::Var(_) | Expr::Call(..) => PREC_ATOM,
            Expr::Neg(_) => PREC_NEG,
            Expr::Add(..) | Expr::Sub(..) => PREC_ADD,
            Expr::Mul(..) | Expr::Div(..) => PREC_MUL,
            Expr::Pow(..) => PREC_POW,
        }
    }

    /// Largest coordinate index referenced, 0 when constant.
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Num(_) => 0,
            Expr::Var(k) => *k,
            Expr::Neg(e) | Expr::Call(_, e) => e.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.max_var() == 0
    }

    /// Exact forward-mode value, gradient and Hessian at `x`.
    pub fn eval_jet2(&self, x: &[f64]) -> Result<Jet2, EvalError> {
        let m = x.len();
        let out = self.jet(x, m)?;
        if !out.is_finite() {
            return Err(self.domain("non-finite result", x));
        }
        Ok(out)
    }

    /// Plain floating-point evaluation.
    pub fn eval(&self, x: &[f64]) -> Result<f64, EvalError> {
        // Zero active coordinates: a value-only evaluation.
        let out = self.jet(x, 0)?;
        if !out.value.is_finite() {
            return Err(self.domain("non-finite result", x));
        }
        Ok(out.value)
    }

    fn domain(&self, reason: &str, x: &[f64]) -> EvalError {
        EvalError::Domain {
            expr: self.to_string(),
            reason: reason.to_string(),
            at: x.to_vec(),
        }
    }

    fn jet(&self, x: &[f64], m: usize) -> Result<Jet2, EvalError> {
        Ok(match self {
            Expr::Num(v) => Jet2::constant(*v, m),
            Expr::Var(k) => {
                let i = k - 1;
                let value = *x.get(i).ok_or(EvalError::MissingCoordinate {
                    index: *k,
                    dim: x.len(),
                })?;
                if i < m {
                    Jet2::variable(value, i, m)
                } else {
                    Jet2::constant(value, m)
                }
            }
            Expr::Neg(e) => -e.jet(x, m)?,
            Expr::Add(a, b) => a.jet(x, m)? + b.jet(x, m)?,
            Expr::Sub(a, b) => a.jet(x, m)? - b.jet(x, m)?,
            Expr::Mul(a, b) => a.jet(x, m)? * b.jet(x, m)?,
            Expr::Div(a, b) => {
                let den = b.jet(x, m)?;
                if den.value == 0.0 {
                    return Err(self.domain("division by zero", x));
                }
                a.jet(x, m)?.div(&den)
            }
            Expr::Pow(base, exp) => {
                let b = base.jet(x, m)?;
                if exp.is_constant() {
                    let e = exp.eval(x)?;
                    if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
                        if e < 0.0 && b.value == 0.0 {
                            return Err(self.domain("zero raised to a negative power", x));
                        }
                        b.powi(e as i32)
                    } else {
                        if b.value <= 0.0 {
                            return Err(self.domain("non-integer power of a non-positive base", x));
                        }
                        b.powf(e)
                    }
                } else {
                    if b.value <= 0.0 {
                        return Err(self.domain("variable power of a non-positive base", x));
                    }
                    (exp.jet(x, m)? * b.ln()).exp()
                }
            }
            Expr::Call(f, arg) => {
                let u = arg.jet(x, m)?;
                match f {
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Tan => {
                        if u.value.cos() == 0.0 {
                            return Err(self.domain("tan pole", x));
                        }
                        u.tan()
                    }
                    Func::Exp => u.exp(),
                    Func::Log => {
                        if u.value <= 0.0 {
                            return Err(self.domain("log of a non-positive value", x));
                        }
                        u.ln()
                    }
                    Func::Sqrt => {
                        if u.value <= 0.0 {
                            return Err(self.domain("sqrt needs a positive argument", x));
                        }
                        u.sqrt()
                    }
                }
            }
        })
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if v.is_sign_negative() => write!(f, "({v})"),
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(k) => write!(f, "x{k}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.fmt_child(f, PREC_NEG)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.fmt_child(f, PREC_ADD)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.fmt_child(f, PREC_ADD + 1)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.fmt_child(f, PREC_MUL)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.fmt_child(f, PREC_MUL + 1)
            }
            Expr::Pow(a, b) => {
                a.fmt_child(f, PREC_ATOM)?;
                f.write_str("^")?;
                b.fmt_child(f, PREC_NEG)
            }
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
