//! δ-vectors and Ehrhart polynomials, from a toric spectrum and from
//! direct lattice point counts.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{binomial, format_rat, rat_int, SpectrumSeries};
use crate::polytope::PolytopeModel;

/// `(δ_0, …, δ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DeltaVector(pub Vec<i64>);

impl DeltaVector {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `Σ δ_k z^k`.
    pub fn as_series(&self) -> SpectrumSeries {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &c)| (rat_int(k as i64), c))
            .collect()
    }
}

/// `δ_k` is the mass of `s` on `(k-1, k]`, `δ_0` its mass at 0.
pub fn delta_from_spectrum(s: &SpectrumSeries, n: usize) -> Result<DeltaVector> {
    let mut delta = vec![0i64; n + 1];
    for (e, c) in s.iter() {
        if e.is_negative() || e > &rat_int(n as i64) {
            return Err(Error::ExponentOutOfRange(format_rat(e)));
        }
        let k = e.ceil().to_integer();
        let k: usize = num_traits::ToPrimitive::to_usize(&k).expect("bounded by n");
        delta[k] += c;
    }
    Ok(DeltaVector(delta))
}

/// Inverts `Σ_ℓ L(ℓ) z^ℓ = δ(z) / (1-z)^{n+1}` using `L(0), …, L(n)`.
pub fn delta_from_counts(m: &PolytopeModel) -> Result<DeltaVector> {
    let n = m.dim() as i64;
    let counts: Vec<i64> = (0..=n as u32).map(|l| m.lattice_count(l) as i64).collect();
    delta_from_lattice_counts(&counts, n as usize)
}

/// Same inversion on an explicit list `L(0), …, L(n)`.
pub fn delta_from_lattice_counts(counts: &[i64], n: usize) -> Result<DeltaVector> {
    let n1 = n as i64 + 1;
    let mut delta = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let d: i64 = (0..=k)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * binomial(n1, j as i64) * counts[k - j]
            })
            .sum();
        if d < 0 {
            return Err(Error::NegativeDelta(k));
        }
        delta.push(d);
    }
    Ok(DeltaVector(delta))
}

/// `L_P(z) = Σ_k δ_k C(z+n-k, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub n: usize,
    pub delta: DeltaVector,
}

impl EhrhartPolynomial {
    pub fn new(delta: DeltaVector) -> Self {
        let n = delta.0.len().saturating_sub(1);
        EhrhartPolynomial { n, delta }
    }

    pub fn eval(&self, z: i64) -> i64 {
        let n = self.n as i64;
        self.delta
            .0
            .iter()
            .enumerate()
            .map(|(k, &d)| d * binomial(z + n - k as i64, n))
            .sum()
    }

    /// `(δ_k, "C(z+n-k,n)")` for the nonzero `δ_k`.
    pub fn terms(&self) -> Vec<(i64, String)> {
        self.delta
            .0
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, &d)| {
                let shift = self.n - k;
                let top = if shift == 0 { "z".to_string() } else { format!("z+{shift}") };
                (d, format!("C({top},{})", self.n))
            })
            .collect()
    }
}

impl fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, b)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == 1 {
                write!(f, "{b}")?;
            } else {
                write!(f, "{c} {b}")?;
            }
        }
        Ok(())
    }
}
