use std::fmt;

use super::lexer::{tokenize, Spanned, Tok};
use super::ParseError;
use crate::form::Differential;
use crate::poly::Variable;
use crate::scalar::{GaussianRational, Rational};

/// Parsed expression. `Group` records source parentheses so printing an
/// expression and parsing it again yields the same tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    I,
    Var(Variable),
    Diff(Differential),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Group(Box<Expr>),
}

impl Expr {
    /// Whether any differential occurs in the expression.
    pub fn has_differentials(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::I | Expr::Var(_) => false,
            Expr::Diff(_) => true,
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Group(e) => e.has_differentials(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Wedge(a, b) => {
                a.has_differentials() || b.has_differentials()
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{}", GaussianRational::from(r.clone())),
            Expr::I => f.write_str("i"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Diff(Differential::Dz(k)) => write!(f, "dz{k}"),
            Expr::Diff(Differential::Dzbar(k)) => write!(f, "dzb{k}"),
            Expr::Neg(e) => write!(f, "-{e}"),
            Expr::Add(a, b) => write!(f, "{a}+{b}"),
            Expr::Sub(a, b) => write!(f, "{a}-{b}"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Wedge(a, b) => write!(f, "{a}^{b}"),
            Expr::Pow(a, k) => write!(f, "{a}**{k}"),
            Expr::Group(e) => write!(f, "({e})"),
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    n: usize,
}

const ATOM_START: &[&str] = &["number", "'i'", "z<k>", "zb<k>", "dz<k>", "dzb<k>", "'('", "'-'"];

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, at: &Spanned, message: String, expected: &[&str]) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn form(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.wedge()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.wedge()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.wedge()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn wedge(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        while self.peek().tok == Tok::Wedge {
            self.bump();
            lhs = Expr::Wedge(Box::new(lhs), Box::new(self.product()?));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            let op = self.bump();
            let rhs = self.unary()?;
            if lhs.has_differentials() && rhs.has_differentials() {
                return Err(self.err_at(
                    &op,
                    "'*' between two forms with differentials; use '^' for the wedge product".into(),
                    &[],
                ));
            }
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Pow {
            return Ok(base);
        }
        let op = self.bump();
        if base.has_differentials() {
            return Err(self.err_at(&op, "power of a form with differentials".into(), &[]));
        }
        let t = self.bump();
        match &t.tok {
            Tok::Num(r) if r.is_integer() => {
                let k: u32 = r
                    .numer()
                    .try_into()
                    .map_err(|_| self.err_at(&t, "exponent out of range".into(), &[]))?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            other => Err(self.err_at(
                &t,
                format!("unexpected {}", other.describe()),
                &["integer exponent"],
            )),
        }
    }

    fn index(&self, at: &Spanned, k: usize) -> Result<usize, ParseError> {
        if k == 0 || k > self.n {
            return Err(self.err_at(at, format!("index {k} out of range 1..={}", self.n), &[]));
        }
        Ok(k)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Num(r) => Ok(Expr::Num(r.clone())),
            Tok::I => Ok(Expr::I),
            Tok::Ident(name, k) => {
                let k = self.index(&t, *k)?;
                Ok(match name.as_str() {
                    "z" => Expr::Var(Variable::Z(k)),
                    "zb" => Expr::Var(Variable::Zbar(k)),
                    "dz" => Expr::Diff(Differential::Dz(k)),
                    _ => Expr::Diff(Differential::Dzbar(k)),
                })
            }
            Tok::LParen => {
                let inner = self.form()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.err_at(
                        &close,
                        format!("unexpected {}", close.tok.describe()),
                        &["')'", "'+'", "'-'", "'*'", "'^'"],
                    ));
                }
                Ok(Expr::Group(Box::new(inner)))
            }
            other => Err(self.err_at(&t, format!("unexpected {}", other.describe()), ATOM_START)),
        }
    }
}

/// Parses `src`, checking every index against `1..=n`.
pub fn parse(src: &str, n: usize) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, n };
    if p.peek().tok == Tok::End {
        let at = p.peek().clone();
        return Err(p.err_at(&at, "empty input".into(), ATOM_START));
    }
    let e = p.form()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.err_at(
            &t,
            format!("unexpected {}", t.tok.describe()),
            &["'+'", "'-'", "'*'", "'^'", "'**'", "end of input"],
        ));
    }
    Ok(e)
}
