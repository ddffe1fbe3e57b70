//! Polynomials as finitely supported maps from exponent vectors to exact
//! rational coefficients, with a small text parser.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff '*'?] factor*
//! factor := var ('^' uint)? '*'?
//! coeff  := int | int '/' uint
//! var    := letter (letter | digit | '_')*
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{format_rat, Rat};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Global,
    Local,
}

/// Exponent vector `m ∈ ℕⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(pub Vec<u32>);

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize, power: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = power;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Index of the only nonzero coordinate, if there is exactly one.
    pub fn pure_power_axis(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &e)| e != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&e| i64::from(e)).collect()
    }

    /// Monomial text such as `u^2*v`, or `1` for the zero vector.
    pub fn monomial_string(&self, vars: &[String]) -> String {
        let factors: Vec<String> = self
            .0
            .iter()
            .zip(vars)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, name)| {
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<ExpVec, Rat>,
    mode: Mode,
}

impl Poly {
    /// Builds a polynomial from explicit terms; like terms are combined and
    /// zero coefficients dropped.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (ExpVec, Rat)>,
        mode: Mode,
    ) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("polynomial needs at least one variable".into()));
        }
        let n = vars.len();
        let mut map: BTreeMap<ExpVec, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::InvalidInput(format!(
                    "exponent vector {e} has length {}, expected {n}",
                    e.len()
                )));
            }
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if mode == Mode::Local && map.contains_key(&ExpVec::zero(n)) {
            return Err(Error::ConstantTermInLocalMode);
        }
        Ok(Poly {
            vars,
            terms: map,
            mode,
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, Rat> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &ExpVec> + '_ {
        self.terms.keys()
    }

    /// Smallest pure power `n_i ≥ 1` of each variable present in the support.
    pub fn check_convenient(&self) -> Result<Vec<u32>> {
        let mut powers: Vec<Option<u32>> = vec![None; self.nvars()];
        for e in self.terms.keys() {
            if let Some(i) = e.pure_power_axis() {
                let p = e.0[i];
                powers[i] = Some(powers[i].map_or(p, |q| q.min(p)));
            }
        }
        let missing: Vec<String> = powers
            .iter()
            .zip(&self.vars)
            .filter(|(p, _)| p.is_none())
            .map(|(_, v)| v.clone())
            .collect();
        if !missing.is_empty() {
            return Err(Error::NotConvenient { missing });
        }
        Ok(powers.into_iter().map(|p| p.unwrap_or_default()).collect())
    }

    /// Sets the variables in `zero_set` to zero and drops them from the
    /// variable list.
    pub fn restrict(&self, zero_set: &BTreeSet<usize>) -> Result<Poly> {
        let n = self.nvars();
        if let Some(&bad) = zero_set.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidRestriction(format!(
                "variable index {bad} out of range for {n} variables"
            )));
        }
        if zero_set.len() == n {
            return Err(Error::InvalidRestriction(
                "cannot set every variable to zero".into(),
            ));
        }
        let keep: Vec<usize> = (0..n).filter(|i| !zero_set.contains(i)).collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| zero_set.iter().all(|&i| e.0[i] == 0))
            .map(|(e, c)| (ExpVec(keep.iter().map(|&i| e.0[i]).collect()), c.clone()));
        Poly::from_terms(vars, terms, self.mode)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponent of the first variable first.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            if e.is_zero() {
                write!(f, "{}", format_rat(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{}", e.monomial_string(&self.vars))?;
            } else {
                write!(f, "{}*{}", format_rat(&magnitude), e.monomial_string(&self.vars))?;
            }
        }
        Ok(())
    }
}

/// Parses `text` into a polynomial. Variables are ordered by `var_order`
/// when given, otherwise by first appearance.
pub fn parse_polynomial(text: &str, mode: Mode, var_order: Option<&[String]>) -> Result<Poly> {
    let raw_terms = Parser::new(text).parse()?;
    let vars: Vec<String> = match var_order {
        Some(order) => {
            let mut seen = BTreeSet::new();
            for v in order {
                if !seen.insert(v.as_str()) {
                    return Err(Error::InvalidInput(format!("variable `{v}` listed twice")));
                }
            }
            for term in &raw_terms {
                for (name, _, offset) in &term.factors {
                    if !order.contains(name) {
                        return Err(Error::UnknownVariable {
                            name: name.clone(),
                            offset: *offset,
                        });
                    }
                }
            }
            order.to_vec()
        }
        None => {
            let mut order: Vec<String> = Vec::new();
            for term in &raw_terms {
                for (name, _, _) in &term.factors {
                    if !order.contains(name) {
                        order.push(name.clone());
                    }
                }
            }
            order
        }
    };
    if vars.is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "polynomial has no variables".into(),
        });
    }
    let terms: Vec<(ExpVec, Rat)> = raw_terms
        .into_iter()
        .map(|t| {
            let mut e = vec![0u32; vars.len()];
            for (name, power, _) in t.factors {
                let i = vars.iter().position(|v| *v == name).expect("variable resolved above");
                e[i] += power;
            }
            (ExpVec(e), t.coefficient)
        })
        .collect();
    Poly::from_terms(vars, terms, mode)
}

struct RawTerm {
    coefficient: Rat,
    factors: Vec<(String, u32, usize)>,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return self.error("empty input"),
            _ => false,
        };
        loop {
            let mut term = self.term()?;
            if negative {
                term.coefficient = -term.coefficient;
            }
            terms.push(term);
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return self.error(format!("unexpected character `{}`", c as char)),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coefficient = Rat::one();
        let mut has_coeff = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.uint()?;
            let mut value = Rat::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let den = self.uint()?;
                if den.is_zero() {
                    return self.error("zero denominator");
                }
                value /= Rat::from_integer(den);
            }
            coefficient = value;
            has_coeff = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                    return self.error("expected a variable after `*`");
                }
            }
        }
        let mut factors = Vec::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            factors.push(self.factor()?);
        }
        if !has_coeff && factors.is_empty() {
            return match self.peek() {
                Some(c) => self.error(format!("expected a term, found `{}`", c as char)),
                None => self.error("expected a term, found end of input"),
            };
        }
        Ok(RawTerm {
            coefficient,
            factors,
        })
    }

    fn factor(&mut self) -> Result<(String, u32, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii identifier")
            .to_string();
        let mut power = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(Error::NegativeExponent { offset: self.pos });
            }
            let value = self.uint()?;
            power = u32::try_from(value).or_else(|_| self.error("exponent too large"))?;
        }
        if self.peek() == Some(b'*') {
            self.pos += 1;
            if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                return self.error("expected a variable after `*`");
            }
        }
        Ok((name, power, start))
    }
}
