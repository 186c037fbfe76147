//! Expression grammar shared by scalar and polynomial strings.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' ['-'] integer)?
//! atom   := integer | 'q' | generator | '(' expr ')' | '-' factor
//! ```
//!
//! Generator names are matched longest-first before anything else, so a
//! declared generator called `q` shadows the deformation parameter.

use super::{Field, Scalar, ScalarError};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Int(BigInt),
    Sym,
    Gen(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym,
    Gen(usize),
    Op(char),
}

fn err(pos: usize, msg: impl Into<String>) -> ScalarError {
    ScalarError::Parse { pos, msg: msg.into() }
}

fn tokenize(s: &str, gens: &[String]) -> Result<Vec<(usize, Tok)>, ScalarError> {
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(gens[i].len()));
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < s.len() {
        let rest = &s[pos..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        if let Some(&g) = order.iter().find(|&&g| !gens[g].is_empty() && rest.starts_with(gens[g].as_str())) {
            out.push((pos, Tok::Gen(g)));
            pos += gens[g].len();
            continue;
        }
        if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            out.push((pos, Tok::Int(rest[..len].parse().unwrap())));
            pos += len;
            continue;
        }
        match c {
            'q' => out.push((pos, Tok::Sym)),
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => out.push((pos, Tok::Op(c))),
            '\u{2212}' => out.push((pos, Tok::Op('-'))),
            _ => return Err(err(pos, format!("unexpected character `{c}`"))),
        }
        pos += c.len_utf8();
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ScalarError> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ScalarError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ScalarError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.at += 1;
                    let e: i64 = n.try_into().map_err(|_| err(pos, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
                }
                _ => return Err(err(pos, "expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ScalarError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Sym) => {
                self.at += 1;
                Ok(Expr::Sym)
            }
            Some(Tok::Gen(g)) => {
                self.at += 1;
                Ok(Expr::Gen(g))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.pos(), "expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(t) => Err(err(pos, format!("unexpected token {t:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse_expr(s: &str, gens: &[String]) -> Result<Expr, ScalarError> {
    let toks = tokenize(s, gens)?;
    let mut p = Parser { toks, at: 0, end: s.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(e)
}

pub(crate) fn eval_scalar(e: &Expr, field: Field) -> Result<Scalar, ScalarError> {
    Ok(match e {
        Expr::Int(n) => Scalar::normalized(field, super::ZPoly::constant(n.clone()), super::ZPoly::one()),
        Expr::Sym => field.q()?,
        Expr::Gen(_) => return Err(err(0, "generator in scalar context")),
        Expr::Add(a, b) => eval_scalar(a, field)?.try_add(&eval_scalar(b, field)?)?,
        Expr::Sub(a, b) => eval_scalar(a, field)?.try_sub(&eval_scalar(b, field)?)?,
        Expr::Mul(a, b) => eval_scalar(a, field)?.try_mul(&eval_scalar(b, field)?)?,
        Expr::Div(a, b) => eval_scalar(a, field)?.try_div(&eval_scalar(b, field)?)?,
        Expr::Neg(a) => -eval_scalar(a, field)?,
        Expr::Pow(a, k) => eval_scalar(a, field)?.pow(*k)?,
    })
}

/// Parse a scalar string such as `3/2` or `(1-q^2)/(1-q)`.
pub fn parse_scalar(field: Field, s: &str) -> Result<Scalar, ScalarError> {
    eval_scalar(&parse_expr(s, &[])?, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_function() {
        let s = parse_scalar(Field::RationalQ, "(1-q^2)/(1-q)").unwrap();
        assert_eq!(s.to_string(), "1+q");
        assert_eq!(parse_scalar(Field::Rational, "3/2").unwrap().to_string(), "3/2");
        assert_eq!(parse_scalar(Field::RationalQ, "q^-1*q").unwrap(), Field::RationalQ.one());
    }

    #[test]
    fn rejects_symbol_in_rationals() {
        assert!(parse_scalar(Field::Rational, "q").is_err());
        assert!(parse_scalar(Field::Rational, "1/0").is_err());
        assert!(parse_scalar(Field::RationalQ, "1+").is_err());
    }
}
