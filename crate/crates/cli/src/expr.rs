//! Expressions in the depth-one generators: `s3`, `s5`, ... for `σ̄_m`,
//! `{a,b}` for brackets, rational linear combinations with `+`, `-`, `*`.

use mdl_core::exactlin::parse_rational;
use mdl_core::liealg::{dg_bracket, ihara_bracket, sigma_bar_word, sigma_poly, DepthPoly, NCPoly};
use mdl_core::Rational;
use num_traits::One;

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(u32),
    Bracket(Box<Expr>, Box<Expr>),
    Scale(Rational, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, msg: &str) -> CliError {
        CliError::Usage(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn digits(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn sum(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = Expr::Sum(Box::new(acc), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = Expr::Sum(
                        Box::new(acc),
                        Box::new(Expr::Scale(-Rational::one(), Box::new(t))),
                    );
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Scale(-Rational::one(), Box::new(self.term()?)))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let text = if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.digits();
                    format!("{num}/{den}")
                } else {
                    num.to_string()
                };
                let c = parse_rational(&text).map_err(|_| self.error("bad coefficient"))?;
                self.expect('*')?;
                Ok(Expr::Scale(c, Box::new(self.term()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        match self.peek() {
            Some('s') => {
                self.pos += 1;
                let m = self.digits();
                m.parse()
                    .map(Expr::Gen)
                    .map_err(|_| self.error("expected generator index"))
            }
            Some('{') => {
                self.pos += 1;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect('}')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.error("expected `s<m>`, `{` or `(`")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, CliError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Value in the free Lie algebra with the Ihara bracket.
    pub fn eval_ihara(&self) -> Result<NCPoly, CliError> {
        Ok(match self {
            Expr::Gen(m) => sigma_bar_word(*m)?,
            Expr::Bracket(a, b) => ihara_bracket(&a.eval_ihara()?, &b.eval_ihara()?),
            Expr::Scale(c, e) => e.eval_ihara()?.scale(c),
            Expr::Sum(a, b) => a.eval_ihara()?.add(&b.eval_ihara()?),
        })
    }

    /// Value in polynomial representation with the depth-graded bracket.
    pub fn eval_graded(&self) -> Result<DepthPoly, CliError> {
        Ok(match self {
            Expr::Gen(m) => sigma_poly(*m)?,
            Expr::Bracket(a, b) => dg_bracket(&a.eval_graded()?, &b.eval_graded()?)?,
            Expr::Scale(c, e) => e.eval_graded()?.scale(c),
            Expr::Sum(a, b) => a.eval_graded()?.add(&b.eval_graded()?)?,
        })
    }
}
