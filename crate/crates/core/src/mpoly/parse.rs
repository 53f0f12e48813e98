//! Text form of polynomials.
//!
//! Canonical output: terms in descending graded-lex order, explicit `*`
//! between factors, `^` for exponents > 1, unit coefficients omitted, e.g.
//! `-25*n^2*t^4 + 10*n*t^2*w^2 + 2*w^4`.  The parser accepts that grammar
//! plus parentheses, unary signs, and arbitrary whitespace; it always
//! round-trips the canonical form.

use super::{is_identifier, MPoly, Monomial, VarSet};
use crate::arith::Int;
use crate::{Error, Result};
use num_traits::{One, Signed};
use std::fmt;

pub(crate) fn monomial_string(vars: &VarSet, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars.names()[i].clone()
            } else {
                format!("{}^{}", vars.names()[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let mag = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars_part = monomial_string(&self.vars, mono);
            if vars_part == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{vars_part}")?;
            } else {
                write!(f, "{mag}*{vars_part}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Int),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let v: Int = text.parse().expect("digit run parses as integer");
                toks.push((start, Tok::Int(v)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(input[start..i].to_string())));
            }
            other => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    vars: VarSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        // unary signs bind to a single factor: "3 * -2" works
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                return Ok(-self.factor()?);
            }
            Some(Tok::Plus) => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let e = match self.bump() {
                Some(Tok::Int(v)) => u32::try_from(&v)
                    .map_err(|_| Error::Parse { pos: self.here(), msg: format!("exponent {v} out of range") })?,
                _ => return self.err("expected integer exponent after '^'"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MPoly> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(MPoly::constant(self.vars.clone(), v)),
            Some(Tok::Ident(name)) => MPoly::var(self.vars.clone(), &name).map_err(|_| Error::Parse {
                pos: self.toks[self.pos - 1].0,
                msg: format!("unknown variable {name:?}"),
            }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => self.err("expected ')'"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl MPoly {
    /// Parses a polynomial.  With `vars: None` the variable set is the
    /// identifiers that occur, sorted alphabetically; with an explicit set,
    /// unknown identifiers are rejected.
    pub fn parse(input: &str, vars: Option<&VarSet>) -> Result<MPoly> {
        let toks = tokenize(input)?;
        let vars = match vars {
            Some(v) => v.clone(),
            None => {
                let mut names: Vec<String> = toks
                    .iter()
                    .filter_map(|(_, t)| match t {
                        Tok::Ident(n) => Some(n.clone()),
                        _ => None,
                    })
                    .collect();
                names.sort();
                names.dedup();
                VarSet::new(names)?
            }
        };
        for n in vars.names() {
            debug_assert!(is_identifier(n));
        }
        let mut parser = Parser { toks: &toks, pos: 0, end: input.len(), vars };
        let poly = parser.expr()?;
        if parser.pos != toks.len() {
            return parser.err("trailing input");
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use proptest::prelude::*;

    #[test]
    fn canonical_display() {
        let p = MPoly::parse("-25*n^2*t^4 + 10*n*t^2*w^2 + 2*w^4", None).unwrap();
        assert_eq!(p.to_string(), "-25*n^2*t^4 + 10*n*t^2*w^2 + 2*w^4");
        assert_eq!(p.vars().names(), &["n", "t", "w"]);
        assert_eq!(MPoly::parse("0", None).unwrap().to_string(), "0");
        assert_eq!(MPoly::parse("x - x", None).unwrap().to_string(), "0");
        // unit coefficients omitted, constants bare
        let q = MPoly::parse("x^2 - x + 7", None).unwrap();
        assert_eq!(q.to_string(), "x^2 - x + 7");
        let r = MPoly::parse("-x*y", None).unwrap();
        assert_eq!(r.to_string(), "-x*y");
    }

    #[test]
    fn descending_graded_lex_output() {
        let p = MPoly::parse("y + x + y^2 + x*y + x^2 + 1", None).unwrap();
        assert_eq!(p.to_string(), "x^2 + x*y + y^2 + x + y + 1");
    }

    #[test]
    fn parentheses_and_signs() {
        let p = MPoly::parse("(x + 1)^2 - (x - 1)^2", None).unwrap();
        assert_eq!(p.to_string(), "4*x");
        let q = MPoly::parse("3 * -2 * x", None).unwrap();
        assert_eq!(q.to_string(), "-6*x");
        let r = MPoly::parse("-(x + y)", None).unwrap();
        assert_eq!(r.to_string(), "-x - y");
    }

    #[test]
    fn explicit_varset() {
        let vars = VarSet::new(["x", "y", "z"]).unwrap();
        let p = MPoly::parse("x + y", Some(&vars)).unwrap();
        assert_eq!(p.vars().names(), &["x", "y", "z"]);
        let bad = MPoly::parse("x + q", Some(&vars));
        match bad {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        match MPoly::parse("x + $", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(MPoly::parse("x ^", None).is_err());
        assert!(MPoly::parse("x + ", None).is_err());
        assert!(MPoly::parse("(x + 1", None).is_err());
        assert!(MPoly::parse("x 5", None).is_err()); // implicit product rejected
    }

    #[test]
    fn eval_parsed_sample() {
        let p = MPoly::parse("-25*n^2*t^4 + 10*n*t^2*w^2 + 2*w^4", None).unwrap();
        let v = p
            .eval(&[("n", int(1)), ("t", int(1)), ("w", int(2))])
            .unwrap();
        assert_eq!(v, int(-25 + 40 + 32));
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(((0u32..5, 0u32..5), -20i64..21), 0..10).prop_map(|terms| {
            let v = VarSet::new(["a", "b"]).unwrap();
            let mut p = MPoly::zero(v.clone());
            for ((i, j), c) in terms {
                p = p + v.constant(c)
                    * MPoly::var(v.clone(), "a").unwrap().pow(i)
                    * MPoly::var(v.clone(), "b").unwrap().pow(j);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn roundtrip(p in arb_poly()) {
            let text = p.to_string();
            let back = MPoly::parse(&text, Some(p.vars())).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
