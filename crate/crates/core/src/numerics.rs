//! Exact rationals and finitely supported series in `z` with rational
//! exponents. Every spectrum, Hodge-Deligne polynomial and δ-vector in the
//! crate is a [`SpectrumSeries`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored reduced with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

/// Renders `p/q`, or just `p` for integers.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidInput(format!("not a rational number: `{s}`"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Floor of a rational as an `i64`.
pub fn floor_i64(r: &Rat) -> Option<i64> {
    r.floor().to_integer().to_i64()
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalised polynomial `Σ c_α z^α` with rational exponents and integer
/// coefficients. Zero coefficients are never stored and iteration runs in
/// ascending exponent order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SpectrumSeries {
    terms: BTreeMap<Rat, i64>,
}

impl SpectrumSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::zero(), 1)
    }

    pub fn monomial(exponent: Rat, coefficient: i64) -> Self {
        let mut s = Self::new();
        s.add_term(exponent, coefficient);
        s
    }

    /// `(z - 1)^k`.
    pub fn z_minus_one_pow(k: u32) -> Self {
        let k = i64::from(k);
        let mut s = Self::new();
        for j in 0..=k {
            let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
            s.add_term(rat_int(j), sign * binomial(k, j));
        }
        s
    }

    pub fn add_term(&mut self, exponent: Rat, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(exponent);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exponent: &Rat) -> i64 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rat, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct exponents.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next_back()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Sum of the coefficients, i.e. the value at `z = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `z^shift · self`.
    pub fn shifted(&self, shift: &Rat) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, *c)).collect(),
        }
    }

    pub fn scaled(&self, factor: i64) -> Self {
        if factor == 0 {
            return Self::new();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    /// `self · (1 - z)^k`, expanded with binomial coefficients.
    pub fn mul_one_minus_z_pow(&self, k: u32) -> Self {
        let k = i64::from(k);
        let mut out = Self::new();
        for (e, c) in &self.terms {
            for j in 0..=k {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                out.add_term(e + rat_int(j), sign * binomial(k, j) * c);
            }
        }
        out
    }

    /// `z^n · self(1/z)`: every exponent `α` becomes `n - α`.
    pub fn reciprocal_reflect(&self, n: i64) -> Self {
        let n = rat_int(n);
        Self {
            terms: self.terms.iter().map(|(e, c)| (&n - e, *c)).collect(),
        }
    }

    /// Terms whose exponent lies in `[lo, hi)`.
    pub fn restricted_to(&self, lo: &Rat, hi: &Rat) -> Self {
        Self {
            terms: self
                .terms
                .range(lo.clone()..hi.clone())
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    /// True when every exponent is an integer.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }
}

impl FromIterator<(Rat, i64)> for SpectrumSeries {
    fn from_iter<I: IntoIterator<Item = (Rat, i64)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (e, c) in iter {
            s.add_term(e, c);
        }
        s
    }
}

impl Add for &SpectrumSeries {
    type Output = SpectrumSeries;

    fn add(self, rhs: &SpectrumSeries) -> SpectrumSeries {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Add for SpectrumSeries {
    type Output = SpectrumSeries;

    fn add(self, rhs: SpectrumSeries) -> SpectrumSeries {
        &self + &rhs
    }
}

impl Neg for &SpectrumSeries {
    type Output = SpectrumSeries;

    fn neg(self) -> SpectrumSeries {
        self.scaled(-1)
    }
}

impl Sub for &SpectrumSeries {
    type Output = SpectrumSeries;

    fn sub(self, rhs: &SpectrumSeries) -> SpectrumSeries {
        self + &(-rhs)
    }
}

impl Sub for SpectrumSeries {
    type Output = SpectrumSeries;

    fn sub(self, rhs: SpectrumSeries) -> SpectrumSeries {
        &self - &rhs
    }
}

impl Mul for &SpectrumSeries {
    type Output = SpectrumSeries;

    fn mul(self, rhs: &SpectrumSeries) -> SpectrumSeries {
        let mut out = SpectrumSeries::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: &Rat) -> fmt::Result {
    if e.is_zero() {
        Ok(())
    } else if e.is_one() {
        write!(f, "z")
    } else if e.is_integer() && e.is_positive() {
        write!(f, "z^{}", e.numer())
    } else {
        write!(f, "z^{{{}}}", format_rat(e))
    }
}

/// `1 + 3 z^{1/2} + 3 z + z^{3/2}`; the empty series prints as `0`.
impl fmt::Display for SpectrumSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, &c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e.is_zero() {
                write!(f, "{magnitude}")?;
            } else {
                if magnitude != 1 {
                    write!(f, "{magnitude} ")?;
                }
                write_exponent(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SpectrumSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpectrumSeries({self})")
    }
}

/// Serializes a rational as its `p/q` string.
pub fn serialize_rat<S: Serializer>(r: &Rat, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_rat(r))
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exponent: String,
    coefficient: i64,
}

impl Serialize for SpectrumSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(e, c)| TermRecord {
                exponent: format_rat(e),
                coefficient: *c,
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpectrumSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut s = SpectrumSeries::new();
        for r in records {
            let e = parse_rat(&r.exponent).map_err(D::Error::custom)?;
            s.add_term(e, r.coefficient);
        }
        Ok(s)
    }
}

/// Least common multiple of the denominators of a set of rationals.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
