//! Curve definitions `gamma(s) = (g1(s), g2(s), g3(s))` as text.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! curve   := expr ',' expr ',' expr
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' exponent)?          right associative
//! exponent:= ('-' | '+') exponent | power
//! atom    := number | 's' | 'pi' | 'e' | name '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Functions: `sin cos tan exp ln sqrt arctan` (alias `atan`) and the
//! two-argument `pow(base, exponent)`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::jet::{Jet, Jet3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Atan,
}

impl Func {
    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "arctan" | "atan" => Func::Atan,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Atan => "arctan",
        }
    }

    fn apply<const N: usize>(self, x: Jet<N>) -> Result<Jet<N>> {
        match self {
            Func::Sin => Ok(x.sin()),
            Func::Cos => Ok(x.cos()),
            Func::Tan => x.tan(),
            Func::Exp => Ok(x.exp()),
            Func::Ln => x.ln(),
            Func::Sqrt => x.sqrt(),
            Func::Atan => Ok(x.atan()),
        }
    }
}

/// Expression tree over the single variable `s`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Parse a single expression (no top-level commas).
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser::new(text)?;
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }

    pub fn eval<const N: usize>(&self, s: Jet<N>) -> Result<Jet<N>> {
        let out = match self {
            Expr::Const(c) => Jet::constant(*c),
            Expr::Var => s,
            Expr::Neg(a) => -a.eval(s)?,
            Expr::Add(a, b) => a.eval(s)? + b.eval(s)?,
            Expr::Sub(a, b) => a.eval(s)? - b.eval(s)?,
            Expr::Mul(a, b) => a.eval(s)? * b.eval(s)?,
            Expr::Div(a, b) => a.eval(s)?.try_div(&b.eval(s)?)?,
            Expr::Pow(a, b) => a.eval(s)?.pow(&b.eval(s)?)?,
            Expr::Call(f, a) => f.apply(a.eval(s)?)?,
        };
        if out.is_finite() {
            Ok(out)
        } else {
            Err(Error::Domain(format!(
                "non-finite value while evaluating {self}"
            )))
        }
    }

    pub fn eval_f64(&self, s: f64) -> Result<f64> {
        Ok(self.eval(Jet::<1>::constant(s))?.value())
    }
}

/// Fully parenthesised rendering; re-parsing yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => f.write_str("s"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a}^{b})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// A parsed three-component curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveExpr {
    pub components: [Expr; 3],
    pub source_text: String,
    /// Closed interval of admissible `s`, if restricted.
    pub domain: Option<(f64, f64)>,
}

impl CurveExpr {
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = Some((lo, hi));
        self
    }

    fn check_domain(&self, s: f64) -> Result<()> {
        if !s.is_finite() {
            return Err(Error::domain("curve parameter is not finite"));
        }
        if let Some((lo, hi)) = self.domain {
            if s < lo || s > hi {
                return Err(Error::Domain(format!(
                    "s = {s} outside curve domain [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    /// Components as length-`N` jets at `s`.
    pub fn eval_jet<const N: usize>(&self, s: f64) -> Result<[Jet<N>; 3]> {
        self.check_domain(s)?;
        let v = Jet::<N>::variable(s);
        Ok([
            self.components[0].eval(v)?,
            self.components[1].eval(v)?,
            self.components[2].eval(v)?,
        ])
    }

    /// `gamma_k, gamma_k', gamma_k'', gamma_k'''` for each component.
    pub fn eval_jet3(&self, s: f64) -> Result<(Jet3, Jet3, Jet3)> {
        let [a, b, c] = self.eval_jet::<4>(s)?;
        Ok((a, b, c))
    }

    pub fn point(&self, s: f64) -> Result<[f64; 3]> {
        let [a, b, c] = self.eval_jet::<1>(s)?;
        Ok([a.value(), b.value(), c.value()])
    }
}

impl fmt::Display for CurveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.components;
        write!(f, "{a}, {b}, {c}")
    }
}

impl core::str::FromStr for CurveExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_curve(s)
    }
}

/// Parse `"g1, g2, g3"`.
pub fn parse_curve(text: &str) -> Result<CurveExpr> {
    let mut p = Parser::new(text)?;
    let a = p.expr()?;
    p.expect(&Tok::Comma, "expected ',' after first component")?;
    let b = p.expr()?;
    p.expect(&Tok::Comma, "expected ',' after second component")?;
    let c = p.expr()?;
    p.expect_end()?;
    Ok(CurveExpr {
        components: [a, b, c],
        source_text: text.to_string(),
        domain: None,
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            // exponent only when digits follow, so `2*e` style stays intact
            if i < chars.len() && matches!(chars[i].1, 'e' | 'E') {
                let mut j = i + 1;
                if j < chars.len() && matches!(chars[j].1, '+' | '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].1.is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
            let lit = &text[pos..end];
            let v: f64 = lit.parse().map_err(|_| Error::Syntax {
                pos: chars[start].0,
                msg: format!("malformed number `{lit}`"),
            })?;
            out.push((Tok::Num(v), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
            out.push((Tok::Ident(text[pos..end].to_string()), pos));
            continue;
        }
        return Err(Error::Syntax {
            pos,
            msg: format!("unexpected character `{c}`"),
        });
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Self {
            toks: lex(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: &Tok, msg: &str) -> Result<()> {
        if self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.syntax(msg)
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => self.syntax("unexpected trailing input"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.exponent()?)))
            }
            Tok::Plus => {
                self.bump();
                self.exponent()
            }
            _ => self.power(),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Const(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(&Tok::RParen, "expected ')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let args = self.args()?;
                    return call(name, pos, args);
                }
                match name.as_str() {
                    "s" => Ok(Expr::Var),
                    "pi" => Ok(Expr::Const(core::f64::consts::PI)),
                    "e" => Ok(Expr::Const(core::f64::consts::E)),
                    _ if Func::lookup(&name).is_some() || name == "pow" => Err(Error::Syntax {
                        pos,
                        msg: format!("function `{name}` needs an argument list"),
                    }),
                    _ => Err(Error::Syntax {
                        pos,
                        msg: format!("unknown identifier `{name}`"),
                    }),
                }
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>> {
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(args);
                }
                _ => return self.syntax("expected ',' or ')' in argument list"),
            }
        }
    }
}

fn call(name: String, pos: usize, mut args: Vec<Expr>) -> Result<Expr> {
    let expected = if name == "pow" {
        2
    } else if Func::lookup(&name).is_some() {
        1
    } else {
        return Err(Error::UnknownFunction { name, pos });
    };
    if args.len() != expected {
        return Err(Error::Arity {
            name,
            expected,
            found: args.len(),
        });
    }
    if expected == 2 {
        let e = args.pop().unwrap();
        let b = args.pop().unwrap();
        return Ok(Expr::Pow(Box::new(b), Box::new(e)));
    }
    let func = Func::lookup(&name).unwrap();
    Ok(Expr::Call(func, Box::new(args.pop().unwrap())))
}
