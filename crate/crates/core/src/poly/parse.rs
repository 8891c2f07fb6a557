use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Polynomial, Ring, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            c if c.is_ascii_digit() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..=i].iter().collect())));
            }
            ch => return Err(Error::UnknownChar { pos: start, ch }),
        }
        i += 1;
    }
    Ok(out)
}

/// A parsed term before it is placed in a ring.
struct RawTerm {
    coeff: BigRational,
    factors: Vec<(Var, u32)>,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn positive_int(&mut self, what: &str) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) if !n.is_zero() => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            Some(Tok::Num(_)) => self.err(format!("{what} must be positive")),
            _ => self.err(format!("expected {what}")),
        }
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            Some(Tok::Plus) => {
                self.at += 1;
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            negative = match self.peek() {
                None => break,
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            };
            self.at += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut t = RawTerm {
            coeff: BigRational::one(),
            factors: Vec::new(),
        };
        loop {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let mut q = BigRational::from_integer(n);
                    if self.peek() == Some(&Tok::Slash) {
                        self.at += 1;
                        let d = self.positive_int("denominator")?;
                        q /= BigRational::from_integer(d);
                    }
                    t.coeff *= q;
                }
                Some(Tok::Ident(name)) => {
                    self.at += 1;
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.at += 1;
                        let pos = self.pos();
                        let k = self.positive_int("exponent")?;
                        e = u32::try_from(k).map_err(|_| Error::Syntax {
                            pos,
                            msg: "exponent too large".into(),
                        })?;
                    }
                    t.factors.push((Var::from_name(&name), e));
                }
                _ => return self.err("expected a number or a variable"),
            }
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            } else {
                return Ok(t);
            }
        }
    }
}

fn parse_raw(text: &str) -> Result<Vec<RawTerm>> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    p.poly()
}

fn build(ring: &Ring, raw: Vec<RawTerm>) -> Result<Polynomial> {
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        terms.push((ring.monomial(&t.factors)?, t.coeff));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

pub(super) fn parse_in(ring: &Ring, text: &str) -> Result<Polynomial> {
    build(ring, parse_raw(text)?)
}

/// Parses a polynomial in the ring of exactly the variables it mentions.
///
/// `weights` assigns grading weights by variable; unmentioned variables
/// get weight 1.
pub fn parse_polynomial(text: &str, weights: Option<&BTreeMap<Var, u32>>) -> Result<Polynomial> {
    let mut ps = parse_polynomials(&[text], weights)?;
    Ok(ps.pop().expect("one input"))
}

/// Parses several polynomials into one common ring (the union of their
/// variables).
pub fn parse_polynomials(
    texts: &[&str],
    weights: Option<&BTreeMap<Var, u32>>,
) -> Result<Vec<Polynomial>> {
    let raws = texts
        .iter()
        .map(|t| parse_raw(t))
        .collect::<Result<Vec<_>>>()?;
    let vars: BTreeSet<Var> = raws
        .iter()
        .flatten()
        .flat_map(|t| t.factors.iter().map(|(v, _)| v.clone()))
        .collect();
    let empty = BTreeMap::new();
    let ring = Ring::with_weights(vars, weights.unwrap_or(&empty))?;
    raws.into_iter().map(|r| build(&ring, r)).collect()
}
