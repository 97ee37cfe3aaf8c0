//! Multivariate polynomials as sums of monomials, with a small text grammar:
//!
//! ```text
//! polynomial := term (('+' | '-') term)*      (empty input: the zero polynomial)
//! term       := ['-'] [integer '*'] factor ('*' factor)*
//! factor     := 'x' index ['^' ['-'] integer]
//! ```
//!
//! Whitespace is ignored. Variables are `x1` through `xk` for arity `k`; a
//! variable repeated inside one term adds its exponents. Like terms are kept
//! separate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::group::UnitSubgroup;
use crate::ring::RingElement;
use crate::symsum::evaluate::{evaluate_with, EvalOptions, Evaluation};
use crate::symsum::{ExponentMultiset, SymsumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("variable x{index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("variable index {0} is too large")]
    IndexTooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("term has {found} variables, polynomial has arity {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Eval(#[from] SymsumError),
}

/// `coefficient * x1^e1 * ... * xk^ek`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: BigInt,
    pub exponents: ExponentMultiset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPolynomial {
    arity: usize,
    terms: Vec<Monomial>,
}

impl MonomialPolynomial {
    pub fn new(arity: usize, terms: Vec<Monomial>) -> Result<Self, PolyError> {
        if let Some(t) = terms.iter().find(|t| t.exponents.len() != arity) {
            return Err(PolyError::ArityMismatch {
                expected: arity,
                found: t.exponents.len(),
            });
        }
        Ok(Self { arity, terms })
    }

    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Int,
    X,
    Plus,
    Minus,
    Star,
    Caret,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    arity: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    /// Classify the next token without consuming it.
    fn peek(&mut self) -> Result<Option<Token>, ParseError> {
        self.skip_ws();
        let Some(c) = self.text[self.pos..].chars().next() else {
            return Ok(None);
        };
        let tok = match c {
            '0'..='9' => Token::Int,
            'x' | 'X' => Token::X,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            other => return Err(self.error(ParseErrorKind::UnexpectedChar(other))),
        };
        Ok(Some(tok))
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn eat(&mut self, tok: Token) -> Result<bool, ParseError> {
        if self.peek()? == Some(tok) {
            self.pos += 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn integer(&mut self) -> Result<(usize, &'a str), ParseError> {
        match self.peek()? {
            Some(Token::Int) => {}
            Some(_) => return Err(self.error(ParseErrorKind::Expected("an integer"))),
            None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
        let start = self.pos;
        let len = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    fn signed_integer(&mut self) -> Result<BigInt, ParseError> {
        let negative = self.eat(Token::Minus)?;
        let (_, digits) = self.integer()?;
        let value: BigInt = digits.parse().expect("digits parse");
        Ok(if negative { -value } else { value })
    }

    fn polynomial(&mut self) -> Result<MonomialPolynomial, ParseError> {
        let mut terms = Vec::new();
        if self.peek()?.is_none() {
            return Ok(MonomialPolynomial::zero(self.arity));
        }
        terms.push(self.term()?);
        loop {
            let sign = match self.peek()? {
                None => break,
                Some(Token::Plus) => BigInt::one(),
                Some(Token::Minus) => -BigInt::one(),
                Some(_) => return Err(self.error(ParseErrorKind::Expected("'+' or '-'"))),
            };
            self.pos += 1;
            let mut t = self.term()?;
            t.coefficient *= sign;
            terms.push(t);
        }
        Ok(MonomialPolynomial {
            arity: self.arity,
            terms,
        })
    }

    fn term(&mut self) -> Result<Monomial, ParseError> {
        let mut coefficient = if self.eat(Token::Minus)? {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        if self.peek()? == Some(Token::Int) {
            let (_, digits) = self.integer()?;
            coefficient *= digits.parse::<BigInt>().expect("digits parse");
            if !self.eat(Token::Star)? {
                return Err(self.error(ParseErrorKind::Expected("'*' after coefficient")));
            }
        }
        let mut exponents = vec![BigInt::zero(); self.arity];
        loop {
            self.factor(&mut exponents)?;
            if !self.eat(Token::Star)? {
                break;
            }
        }
        Ok(Monomial {
            coefficient,
            exponents: ExponentMultiset::new(exponents),
        })
    }

    fn factor(&mut self, exponents: &mut [BigInt]) -> Result<(), ParseError> {
        match self.peek()? {
            Some(Token::X) => self.pos += 1,
            Some(_) => return Err(self.error(ParseErrorKind::Expected("a variable x<index>"))),
            None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
        let (at, digits) = self.integer()?;
        let index: usize = digits.parse().map_err(|_| ParseError {
            position: at,
            kind: ParseErrorKind::IndexTooLarge(digits.to_string()),
        })?;
        if index == 0 || index > self.arity {
            return Err(ParseError {
                position: at,
                kind: ParseErrorKind::IndexOutOfRange {
                    index,
                    arity: self.arity,
                },
            });
        }
        let power = if self.eat(Token::Caret)? {
            self.signed_integer()?
        } else {
            BigInt::one()
        };
        exponents[index - 1] += power;
        Ok(())
    }
}

/// Parse `text` as a polynomial in `x1..x{arity}`.
pub fn parse(text: &str, arity: usize) -> Result<MonomialPolynomial, ParseError> {
    Parser {
        text,
        pos: 0,
        arity,
    }
    .polynomial()
}

impl fmt::Display for MonomialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            let c = &term.coefficient;
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            let factors: Vec<String> = term
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(v, e)| {
                    if e.is_one() {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e)
                    }
                })
                .collect();
            if factors.is_empty() {
                f.write_str("x1^0")?;
            } else {
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermEvaluation {
    pub coefficient: BigInt,
    /// The symmetric sum of the bare monomial.
    pub evaluation: Evaluation,
    /// `coefficient * evaluation.value`.
    pub contribution: RingElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEvaluation {
    pub value: RingElement,
    pub per_term: Vec<TermEvaluation>,
}

/// Sum of `f(x1, ..., xk)` over pairwise distinct arguments from the
/// subgroup, one symmetric sum per term.
pub fn eval_sum(group: &UnitSubgroup, f: &MonomialPolynomial) -> Result<PolyEvaluation, PolyError> {
    eval_sum_with(group, f, EvalOptions::default())
}

pub fn eval_sum_with(
    group: &UnitSubgroup,
    f: &MonomialPolynomial,
    options: EvalOptions,
) -> Result<PolyEvaluation, PolyError> {
    let ring = group.ring();
    if f.arity() as u64 > group.order() {
        return Err(SymsumError::TooManyExponents {
            k: f.arity(),
            n: group.order(),
        }
        .into());
    }
    let mut total = BigInt::zero();
    let mut per_term = Vec::with_capacity(f.terms().len());
    for term in f.terms() {
        let evaluation = evaluate_with(group, &term.exponents, options)?;
        let scaled = &term.coefficient * BigInt::from(evaluation.value.value());
        total += &scaled;
        per_term.push(TermEvaluation {
            coefficient: term.coefficient.clone(),
            evaluation,
            contribution: ring.from_bigint(&scaled),
        });
    }
    Ok(PolyEvaluation {
        value: ring.from_bigint(&total),
        per_term,
    })
}
