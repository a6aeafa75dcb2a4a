//! Element literals and arithmetic expressions.
//!
//! Element literal: `[sign] term (sign term)*` where a term is a coefficient
//! (`3`, `3/4` or `0.75`), a basis unit (`e5`, or `i`, `j`, `k` for `e1`,
//! `e2`, `e3`; `e0` is 1), or a coefficient followed by a unit (`2e1`,
//! `1/2 e3`, `2*e1`).
//!
//! Expressions add `*`, unary `-`, integer powers `x^n`, parentheses and the
//! functions `conj`, `inv`, `norm`, `re`, `im`. There is no division; `/`
//! only appears inside fraction literals.

use std::fmt;

use cayley_core::{Element, Rational, Scalar, MAX_ELEMENT_LEVEL};

use crate::error::{Error, ParseError};

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Exact(Rational),
    Decimal(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(Literal),
    Basis(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Conj(Box<Expr>),
    Inv(Box<Expr>),
    Pow(Box<Expr>, i64),
    Norm(Box<Expr>),
    Re(Box<Expr>),
    Im(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

/// A value on either backend.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Element<Rational>),
    Float(Element<f64>),
}

impl Value {
    pub fn level(&self) -> u32 {
        match self {
            Value::Exact(e) => e.level(),
            Value::Float(e) => e.level(),
        }
    }

    pub fn to_f64(&self) -> Element<f64> {
        match self {
            Value::Exact(e) => e.to_f64(),
            Value::Float(e) => e.clone(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(e) => f.write_str(&crate::format::element_text(e)),
            Value::Float(e) => f.write_str(&crate::format::element_text(e)),
        }
    }
}

/// Decimal text that reads back as a decimal: shortest round-trip digits, always with a `.`.
pub(crate) fn decimal_text(x: f64) -> String {
    let s = format!("{x}");
    if s.contains(['.', 'i', 'N']) {
        s
    } else {
        s + ".0"
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Exact(r) => write!(f, "{r}"),
            Literal::Decimal(x) => f.write_str(&decimal_text(*x)),
        }
    }
}

/// Prints every compound node in parentheses so the text parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(l) => write!(f, "{l}"),
            Expr::Basis(i) => write!(f, "e{i}"),
            Expr::Neg(x) => write!(f, "(-{x})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Pow(x, n) => write!(f, "({x}^{n})"),
            Expr::Conj(x) => write!(f, "conj({x})"),
            Expr::Inv(x) => write!(f, "inv({x})"),
            Expr::Norm(x) => write!(f, "norm({x})"),
            Expr::Re(x) => write!(f, "re({x})"),
            Expr::Im(x) => write!(f, "im({x})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Literal),
    Unit(usize),
    Func(&'static str),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

const FUNCTIONS: [&str; 5] = ["conj", "inv", "norm", "re", "im"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let int_end = digits_end(i);
                let next_is_digit = |j: usize| j + 1 < bytes.len() && bytes[j + 1].is_ascii_digit();
                let (end, lit) = match bytes.get(int_end) {
                    Some(b'.') if next_is_digit(int_end) => {
                        let end = digits_end(int_end + 1);
                        let x: f64 = text[i..end].parse().map_err(|_| ParseError::new(i, "invalid decimal"))?;
                        (end, Literal::Decimal(x))
                    }
                    Some(b'/') if next_is_digit(int_end) => {
                        let end = digits_end(int_end + 1);
                        let r: Rational =
                            text[i..end].parse().map_err(|_| ParseError::new(int_end + 1, "zero denominator"))?;
                        (end, Literal::Exact(r))
                    }
                    Some(b'.') | Some(b'/') => return Err(ParseError::new(int_end + 1, "expected digits")),
                    _ => (int_end, Literal::Exact(text[i..int_end].parse().expect("digits parse"))),
                };
                out.push((start, Tok::Num(lit)));
                i = end;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = i;
                while end < bytes.len() && bytes[end].is_ascii_alphanumeric() {
                    end += 1;
                }
                let word = &text[i..end];
                let tok = match word {
                    "i" => Tok::Unit(1),
                    "j" => Tok::Unit(2),
                    "k" => Tok::Unit(3),
                    w if w.len() > 1 && w.starts_with('e') && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
                        let index: usize = w[1..]
                            .parse()
                            .ok()
                            .filter(|&n| n < 1usize << MAX_ELEMENT_LEVEL)
                            .ok_or_else(|| ParseError::new(i, "basis index too large"))?;
                        Tok::Unit(index)
                    }
                    w => match FUNCTIONS.iter().find(|f| **f == w) {
                        Some(f) => Tok::Func(f),
                        None => return Err(ParseError::new(i, format!("unknown name '{w}'"))),
                    },
                };
                out.push((start, tok));
                i = end;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(i, format!("unexpected '{ch}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::new(self.offset(), message))
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => self.fail("unexpected trailing input"),
        }
    }

    /// A term of an element literal: coefficient, unit, or coefficient then unit.
    fn literal_term(&mut self) -> Result<(Literal, usize), ParseError> {
        match self.peek().clone() {
            Tok::Unit(i) => {
                self.bump();
                Ok((Literal::Exact(Rational::ONE), i))
            }
            Tok::Num(lit) => {
                self.bump();
                let starred = *self.peek() == Tok::Star;
                if starred {
                    self.bump();
                }
                match *self.peek() {
                    Tok::Unit(i) => {
                        self.bump();
                        Ok((lit, i))
                    }
                    _ if starred => self.fail("expected a basis unit"),
                    _ => Ok((lit, 0)),
                }
            }
            _ => self.fail("expected a coefficient or basis unit"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let exponent = match self.peek() {
            Tok::Num(Literal::Exact(r)) if r.is_integer() => r.numer().try_into().ok(),
            _ => None,
        };
        let Some(n) = exponent else {
            return self.fail("expected an integer exponent");
        };
        self.bump();
        let n: i64 = n;
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.pos;
        match self.bump() {
            Tok::Num(lit) => {
                let lit = Expr::Literal(lit);
                if let Tok::Unit(i) = *self.peek() {
                    self.bump();
                    return Ok(Expr::Mul(Box::new(lit), Box::new(Expr::Basis(i))));
                }
                Ok(lit)
            }
            Tok::Unit(i) => Ok(Expr::Basis(i)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.close()?;
                Ok(inner)
            }
            Tok::Func(name) => {
                if *self.peek() != Tok::LParen {
                    return self.fail("expected '('");
                }
                self.bump();
                let arg = Box::new(self.expr()?);
                self.close()?;
                Ok(match name {
                    "conj" => Expr::Conj(arg),
                    "inv" => Expr::Inv(arg),
                    "norm" => Expr::Norm(arg),
                    "re" => Expr::Re(arg),
                    _ => Expr::Im(arg),
                })
            }
            _ => {
                self.pos = at;
                self.fail("expected a term")
            }
        }
    }

    fn close(&mut self) -> Result<(), ParseError> {
        if *self.peek() != Tok::RParen {
            return self.fail("expected ')'");
        }
        self.bump();
        Ok(())
    }
}

/// Parses a full expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_expr(s)
    }
}

fn infer_level(max_index: usize) -> u32 {
    let mut n = 0;
    while (1usize << n) <= max_index {
        n += 1;
    }
    n
}

fn resolve_level(max_index: usize, level: Option<u32>) -> Result<u32, Error> {
    match level {
        Some(l) if l > MAX_ELEMENT_LEVEL => {
            Err(cayley_core::Error::LevelTooLarge { level: l, max: MAX_ELEMENT_LEVEL }.into())
        }
        Some(l) if max_index >= 1usize << l => Err(Error::IndexOutOfRange { index: max_index, level: l }),
        Some(l) => Ok(l),
        None => Ok(infer_level(max_index)),
    }
}

/// Decimal literals force the float backend; fractions and decimals may not mix.
fn pick_backend<'a>(literals: impl Iterator<Item = &'a Literal>, requested: Option<Backend>) -> Result<Backend, Error> {
    let (mut decimal, mut fraction) = (false, false);
    for lit in literals {
        match lit {
            Literal::Decimal(_) => decimal = true,
            Literal::Exact(r) if !r.is_integer() => fraction = true,
            Literal::Exact(_) => {}
        }
    }
    if decimal && fraction {
        return Err(Error::MixedLiterals);
    }
    match (requested, decimal) {
        (Some(Backend::Exact), true) => Err(Error::DecimalInExact),
        (Some(b), _) => Ok(b),
        (None, true) => Ok(Backend::Float),
        (None, false) => Ok(Backend::Exact),
    }
}

fn build<S: FromLiteral>(level: u32, terms: &[(Literal, usize)]) -> Result<Element<S>, Error> {
    let mut coeffs = vec![S::zero(); 1usize << level];
    for (lit, i) in terms {
        coeffs[*i] = coeffs[*i].clone() + S::from_literal(lit)?;
    }
    Ok(Element::new(level, coeffs)?)
}

/// Parses an element literal such as `1 + 2e1 - 3/4 e11`.
///
/// Repeated units add up. The level is the smallest one holding every index
/// unless `level` is given.
pub fn parse_element(text: &str, level: Option<u32>) -> Result<Value, Error> {
    let mut p = Parser::new(text)?;
    let mut terms = Vec::new();
    let mut negative = false;
    if *p.peek() == Tok::Minus {
        p.bump();
        negative = true;
    }
    loop {
        let (lit, i) = p.literal_term()?;
        let lit = match (negative, lit) {
            (false, l) => l,
            (true, Literal::Exact(r)) => Literal::Exact(-r),
            (true, Literal::Decimal(x)) => Literal::Decimal(-x),
        };
        terms.push((lit, i));
        negative = match p.peek() {
            Tok::Plus => false,
            Tok::Minus => true,
            Tok::End => break,
            _ => return Err(ParseError::new(p.offset(), "expected '+' or '-'").into()),
        };
        p.bump();
    }
    let level = resolve_level(terms.iter().map(|t| t.1).max().unwrap_or(0), level)?;
    Ok(match pick_backend(terms.iter().map(|t| &t.0), None)? {
        Backend::Exact => Value::Exact(build(level, &terms)?),
        Backend::Float => Value::Float(build(level, &terms)?),
    })
}

/// Scalars that literals can be converted into.
pub trait FromLiteral: Scalar {
    fn from_literal(lit: &Literal) -> Result<Self, Error>;
}

impl FromLiteral for Rational {
    fn from_literal(lit: &Literal) -> Result<Self, Error> {
        match lit {
            Literal::Exact(r) => Ok(r.clone()),
            Literal::Decimal(_) => Err(Error::DecimalInExact),
        }
    }
}

impl FromLiteral for f64 {
    fn from_literal(lit: &Literal) -> Result<Self, Error> {
        Ok(match lit {
            Literal::Exact(r) => r.to_f64(),
            Literal::Decimal(x) => *x,
        })
    }
}

impl Expr {
    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Literal(_) | Expr::Basis(_) => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Neg(x)
            | Expr::Conj(x)
            | Expr::Inv(x)
            | Expr::Pow(x, _)
            | Expr::Norm(x)
            | Expr::Re(x)
            | Expr::Im(x) => x.visit(f),
        }
    }

    /// Largest basis index mentioned, 0 if none.
    pub fn max_index(&self) -> usize {
        let mut m = 0;
        self.visit(&mut |e| {
            if let Expr::Basis(i) = e {
                m = m.max(*i);
            }
        });
        m
    }

    pub fn literals(&self) -> Vec<&Literal> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let Expr::Literal(l) = e {
                out.push(l);
            }
        });
        out
    }

    /// Evaluates at `level` on the backend chosen by `S`.
    pub fn eval<S: FromLiteral>(&self, level: u32) -> Result<Element<S>, Error> {
        let un = |x: &Expr| x.eval::<S>(level);
        Ok(match self {
            Expr::Literal(l) => Element::from_scalar(level, S::from_literal(l)?),
            Expr::Basis(i) if *i >= 1usize << level => return Err(Error::IndexOutOfRange { index: *i, level }),
            Expr::Basis(i) => Element::basis(level, *i),
            Expr::Neg(x) => -un(x)?,
            Expr::Add(a, b) => &un(a)? + &un(b)?,
            Expr::Sub(a, b) => &un(a)? - &un(b)?,
            Expr::Mul(a, b) => &un(a)? * &un(b)?,
            Expr::Conj(x) => un(x)?.conj(),
            Expr::Inv(x) => un(x)?.inverse()?,
            Expr::Pow(x, n) => un(x)?.pow(*n)?,
            Expr::Norm(x) => {
                let n = un(x)?.norm_sq().sqrt().ok_or(cayley_core::Error::Irrational("norm"))?;
                Element::from_scalar(level, n)
            }
            Expr::Re(x) => Element::from_scalar(level, un(x)?.re()),
            Expr::Im(x) => un(x)?.im(),
        })
    }
}

/// Level and backend shared by a group of expressions evaluated together.
pub fn common_setting(exprs: &[&Expr], level: Option<u32>, backend: Option<Backend>) -> Result<(u32, Backend), Error> {
    let max_index = exprs.iter().map(|e| e.max_index()).max().unwrap_or(0);
    let level = resolve_level(max_index, level)?;
    let backend = pick_backend(exprs.iter().flat_map(|e| e.literals()), backend)?;
    Ok((level, backend))
}

/// Parses and evaluates `text`.
pub fn eval_expression(text: &str, level: Option<u32>, backend: Option<Backend>) -> Result<Value, Error> {
    let e = parse_expr(text)?;
    let (level, backend) = common_setting(&[&e], level, backend)?;
    Ok(match backend {
        Backend::Exact => Value::Exact(e.eval(level)?),
        Backend::Float => Value::Float(e.eval(level)?),
    })
}
