//! The graded ring `B = ⊕_α B_α` spanned by symbols `δ_m`, the leading
//! classes `F_i` of the logarithmic partials, and the graded quotient
//! `B / (F_1, …, F_n)` with bases and structure constants.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inverse, rref, Rref};
use crate::numerics::{format_rat, rat_int, Rat, SpectrumSeries};
use crate::poly::{parse_polynomial, ExpVec, Mode, Poly};
use crate::polytope::PolytopeModel;

/// Homogeneous linear combination of symbols `δ_m` of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    pub degree: Rat,
    /// Nonzero coefficients, kept in insertion order.
    pub terms: Vec<(ExpVec, Rat)>,
}

impl GradedClass {
    pub fn zero(degree: Rat) -> Self {
        GradedClass { degree, terms: Vec::new() }
    }

    pub fn monomial(m: ExpVec, degree: Rat) -> Self {
        GradedClass { degree, terms: vec![(m, Rat::one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ExpVec) -> Rat {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    /// Signed monomial notation, e.g. `-u^2*v^2` or `u + 1/2*v`; `0` when
    /// empty.
    pub fn format(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.monomial_string(vars);
            if m.is_zero() {
                out.push_str(&format_rat(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", format_rat(&abs)));
            }
        }
        out
    }
}

/// `δ_{m1}·δ_{m2}`: `δ_{m1+m2}` when both lie in a common cone, else 0.
pub fn b_product(model: &PolytopeModel, m1: &ExpVec, m2: &ExpVec) -> GradedClass {
    let sum = m1.add(m2);
    let degree = model.newton_value(&sum);
    if model.same_cone(m1, m2) {
        GradedClass::monomial(sum, degree)
    } else {
        GradedClass::zero(degree)
    }
}

/// Classes in `B_1` of `x_i ∂f/∂x_i`: only terms on the Newton boundary
/// survive.
pub fn leading_classes(p: &Poly, model: &PolytopeModel) -> Vec<GradedClass> {
    let d = model.denominator();
    (0..p.nvars())
        .map(|i| GradedClass {
            degree: Rat::one(),
            terms: p
                .terms()
                .iter()
                .filter(|(m, _)| m.0[i] > 0 && model.scaled_value(&m.0) == d)
                .map(|(m, a)| (m.clone(), a * rat_int(i64::from(m.0[i]))))
                .collect(),
        })
        .collect()
}

/// Reduction data for a single degree `α`.
#[derive(Clone, Debug)]
pub struct DegreeReduction {
    pub degree: Rat,
    /// Monomials with `ν = α`, ascending by total degree then
    /// lexicographically; these index the matrix columns.
    pub monomials: Vec<ExpVec>,
    index: HashMap<ExpVec, usize>,
    relations: Rref,
    /// Non-pivot columns: the default basis of the quotient in this degree.
    free_columns: Vec<usize>,
    /// Chosen basis, either the default one or a validated hint.
    pub basis: Vec<ExpVec>,
    /// Change of coordinates from the default basis to `basis`.
    change: Option<Vec<Vec<Rat>>>,
}

impl DegreeReduction {
    pub fn dimension(&self) -> usize {
        self.free_columns.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Normal form of `δ_m` on the default basis.
    fn normal_form(&self, m: &ExpVec) -> Option<Vec<Rat>> {
        let &col = self.index.get(m)?;
        let mut v = vec![Rat::zero(); self.monomials.len()];
        v[col] = Rat::one();
        self.relations.reduce(&mut v);
        Some(self.free_columns.iter().map(|&c| v[c].clone()).collect())
    }

    /// Coordinates of `δ_m` in the chosen basis.
    fn coordinates(&self, m: &ExpVec) -> Option<Vec<Rat>> {
        let nf = self.normal_form(m)?;
        Some(match &self.change {
            None => nf,
            Some(h_inv) => (0..nf.len())
                .map(|j| {
                    nf.iter()
                        .zip(h_inv)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, row)| x * &row[j])
                        .sum()
                })
                .collect(),
        })
    }

    fn install_hint(&mut self, hint: Vec<ExpVec>) -> Result<()> {
        let rows: Option<Vec<Vec<Rat>>> = hint.iter().map(|h| self.normal_form(h)).collect();
        let rows = rows.ok_or_else(|| {
            Error::HintNotABasis(format!("a monomial is not in degree {}", format_rat(&self.degree)))
        })?;
        let h_inv = inverse(&rows).ok_or_else(|| {
            Error::HintNotABasis(format!(
                "hint monomials of degree {} are linearly dependent modulo the relations",
                format_rat(&self.degree)
            ))
        })?;
        self.basis = hint;
        self.change = Some(h_inv);
        Ok(())
    }
}

fn monomial_order(a: &ExpVec, b: &ExpVec) -> std::cmp::Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b))
}

/// Graded basis of `B / (F_1, …, F_n)` on every degree up to a bound.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    vars: Vec<String>,
    model: PolytopeModel,
    /// Degrees keyed by `D·α`.
    degrees: BTreeMap<i64, DegreeReduction>,
    max_scaled: i64,
    order: Vec<ExpVec>,
}

impl GradedBasis {
    pub fn model(&self) -> &PolytopeModel {
        &self.model
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Basis monomials: the hint order when one was given, otherwise by
    /// degree and column order.
    pub fn basis(&self) -> &[ExpVec] {
        &self.order
    }

    pub fn degrees(&self) -> impl Iterator<Item = &DegreeReduction> + '_ {
        self.degrees.values()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `Σ_α dim (B/F)_α · z^α`.
    pub fn hilbert_series(&self) -> SpectrumSeries {
        self.degrees
            .values()
            .filter(|r| r.dimension() > 0)
            .map(|r| (r.degree.clone(), r.dimension() as i64))
            .collect()
    }

    /// Class of `δ_m` in the quotient expressed in the basis.
    pub fn reduce(&self, m: &ExpVec) -> Result<GradedClass> {
        let scaled = self.model.scaled_value(&m.0);
        let degree = self.model.scaled_to_rat(scaled);
        if scaled > self.max_scaled {
            return Ok(GradedClass::zero(degree));
        }
        let red = self.degrees.get(&scaled).ok_or_else(|| {
            Error::ReductionFailure(format!("degree {} was not computed", format_rat(&degree)))
        })?;
        let coords = red.coordinates(m).ok_or_else(|| {
            Error::ReductionFailure(format!("monomial {m} missing from degree {}", format_rat(&degree)))
        })?;
        let terms = red
            .basis
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b.clone(), c))
            .collect();
        Ok(GradedClass { degree, terms })
    }

    /// Product of two basis monomials in the quotient.
    pub fn multiply(&self, x: &ExpVec, y: &ExpVec) -> Result<GradedClass> {
        let prod = b_product(&self.model, x, y);
        match prod.terms.first() {
            None => Ok(prod),
            Some((m, _)) => self.reduce(m),
        }
    }

    /// Product of two classes, extended bilinearly.
    pub fn multiply_classes(&self, a: &GradedClass, b: &GradedClass) -> Result<GradedClass> {
        let degree = &a.degree + &b.degree;
        let mut acc: BTreeMap<ExpVec, Rat> = BTreeMap::new();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                for (m, c) in self.multiply(x, y)?.terms {
                    *acc.entry(m).or_insert_with(Rat::zero) += cx * cy * c;
                }
            }
        }
        let terms = self
            .order
            .iter()
            .filter_map(|m| acc.get(m).filter(|c| !c.is_zero()).map(|c| (m.clone(), c.clone())))
            .collect();
        Ok(GradedClass { degree, terms })
    }
}

/// Which degrees to compute and what to check them against.
#[derive(Clone, Copy, Debug)]
pub enum DegreeBound<'a> {
    /// Degrees up to the last exponent of a known spectrum; each dimension
    /// must match its coefficient.
    Expected(&'a SpectrumSeries),
    /// Every degree `≤ n`, no expectation.
    UpToDimension,
}

/// Row-reduces `Σ_i F_i·B_{α-1} ⊆ B_α` degree by degree and picks a basis
/// of the complement, either the non-pivot monomials or `hint`.
pub fn quotient_basis(
    p: &Poly,
    model: &PolytopeModel,
    bound: DegreeBound<'_>,
    hint: Option<&[ExpVec]>,
) -> Result<GradedBasis> {
    let n = model.dim();
    let d = model.denominator();
    let max_degree = match bound {
        DegreeBound::Expected(s) => s.max_exponent().cloned().unwrap_or_else(Rat::zero),
        DegreeBound::UpToDimension => rat_int(n as i64),
    };
    let max_scaled = (&max_degree * rat_int(d)).to_integer();
    let max_scaled: i64 = num_traits::ToPrimitive::to_i64(&max_scaled)
        .ok_or(Error::Overflow("degree bound"))?;

    let mut by_degree: BTreeMap<i64, Vec<ExpVec>> = BTreeMap::new();
    for v in model.points_with_value_at_most(&max_degree) {
        by_degree.entry(model.scaled_value(&v.0)).or_default().push(v);
    }
    for list in by_degree.values_mut() {
        list.sort_by(monomial_order);
    }
    let leading = leading_classes(p, model);

    let reductions: Vec<(i64, DegreeReduction)> = by_degree
        .par_iter()
        .map(|(&scaled, monomials)| {
            let index: HashMap<ExpVec, usize> =
                monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let mut rows = Vec::new();
            if let Some(lower) = by_degree.get(&(scaled - d)) {
                for m in lower {
                    for f in &leading {
                        let mut row = vec![Rat::zero(); monomials.len()];
                        let mut nonzero = false;
                        for (t, c) in &f.terms {
                            if model.same_cone(t, m) {
                                row[index[&t.add(m)]] += c;
                                nonzero = true;
                            }
                        }
                        if nonzero {
                            rows.push(row);
                        }
                    }
                }
            }
            let relations = rref(rows, monomials.len());
            let free_columns: Vec<usize> =
                (0..monomials.len()).filter(|c| relations.pivots.binary_search(c).is_err()).collect();
            let basis = free_columns.iter().map(|&c| monomials[c].clone()).collect();
            let red = DegreeReduction {
                degree: model.scaled_to_rat(scaled),
                monomials: monomials.clone(),
                index,
                relations,
                free_columns,
                basis,
                change: None,
            };
            (scaled, red)
        })
        .collect();
    let mut degrees: BTreeMap<i64, DegreeReduction> = reductions.into_iter().collect();

    if let DegreeBound::Expected(expected) = bound {
        for red in degrees.values() {
            let want = expected.coefficient(&red.degree);
            if want != red.dimension() as i64 {
                return Err(Error::DimensionMismatch {
                    degree: format_rat(&red.degree),
                    expected: want,
                    found: red.dimension() as i64,
                });
            }
        }
        for (exp, c) in expected.iter() {
            let scaled = (exp * rat_int(d)).to_integer();
            let present = num_traits::ToPrimitive::to_i64(&scaled)
                .and_then(|s| degrees.get(&s))
                .is_some();
            if !present {
                return Err(Error::DimensionMismatch { degree: format_rat(exp), expected: c, found: 0 });
            }
        }
    }

    let order = match hint {
        None => degrees.values().flat_map(|r| r.basis.iter().cloned()).collect(),
        Some(hint) => {
            let mut grouped: BTreeMap<i64, Vec<ExpVec>> = BTreeMap::new();
            for (i, h) in hint.iter().enumerate() {
                if h.len() != n {
                    return Err(Error::HintNotABasis(format!("monomial {h} has the wrong length")));
                }
                if hint[..i].contains(h) {
                    return Err(Error::HintNotABasis(format!("monomial {h} is repeated")));
                }
                grouped.entry(model.scaled_value(&h.0)).or_default().push(h.clone());
            }
            for (scaled, red) in degrees.iter_mut() {
                let given = grouped.remove(scaled).unwrap_or_default();
                if given.len() != red.dimension() {
                    return Err(Error::HintNotABasis(format!(
                        "degree {} needs {} monomials, hint has {}",
                        format_rat(&red.degree),
                        red.dimension(),
                        given.len()
                    )));
                }
                if !given.is_empty() {
                    red.install_hint(given)?;
                }
            }
            if let Some((scaled, extra)) = grouped.into_iter().next() {
                return Err(Error::HintNotABasis(format!(
                    "monomial {} has degree {} where the quotient vanishes",
                    extra[0],
                    format_rat(&model.scaled_to_rat(scaled))
                )));
            }
            hint.to_vec()
        }
    };

    Ok(GradedBasis { vars: p.vars().to_vec(), model: model.clone(), degrees, max_scaled, order })
}

/// Parses a comma-separated monomial list such as `1,u*v,u^2*v`.
pub fn parse_monomials(text: &str, vars: &[String]) -> Result<Vec<ExpVec>> {
    text.split(',')
        .map(|piece| {
            let q = parse_polynomial(piece, Mode::Global, Some(vars))?;
            match q.terms().iter().next() {
                Some((m, c)) if q.terms().len() == 1 && c.is_one() => Ok(m.clone()),
                _ => Err(Error::InvalidInput(format!("`{}` is not a monomial", piece.trim()))),
            }
        })
        .collect()
}

/// Structure constants of the quotient on its basis.
#[derive(Clone, Debug)]
pub struct ProductTable {
    pub basis: Vec<ExpVec>,
    pub entries: Vec<Vec<GradedClass>>,
    vars: Vec<String>,
}

pub fn product_table(basis: &GradedBasis) -> Result<ProductTable> {
    let b = basis.basis();
    let entries: Result<Vec<Vec<GradedClass>>> = b
        .par_iter()
        .map(|x| b.iter().map(|y| basis.multiply(x, y)).collect())
        .collect();
    Ok(ProductTable { basis: b.to_vec(), entries: entries?, vars: basis.vars.clone() })
}

#[derive(Serialize)]
struct TableJson {
    schema: u32,
    basis: Vec<String>,
    degrees: Vec<String>,
    table: Vec<Vec<String>>,
}

impl ProductTable {
    pub fn entry(&self, x: &ExpVec, y: &ExpVec) -> Option<&GradedClass> {
        let i = self.basis.iter().position(|b| b == x)?;
        let j = self.basis.iter().position(|b| b == y)?;
        Some(&self.entries[i][j])
    }

    fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.monomial_string(&self.vars)).collect()
    }

    fn cells(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|c| c.format(&self.vars)).collect())
            .collect()
    }

    /// Aligned text grid with the basis along both axes.
    pub fn to_text(&self) -> String {
        let labels = self.labels();
        let cells = self.cells();
        let mut width = labels.iter().map(String::len).max().unwrap_or(1).max(1);
        for row in &cells {
            for c in row {
                width = width.max(c.chars().count());
            }
        }
        let pad = |s: &str| format!("{s:>width$}");
        let mut out = String::new();
        out.push_str(&pad("*"));
        for l in &labels {
            out.push_str(" | ");
            out.push_str(&pad(l));
        }
        out.push('\n');
        for (l, row) in labels.iter().zip(&cells) {
            out.push_str(&pad(l));
            for c in row {
                out.push_str(" | ");
                out.push_str(&pad(c));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, model: &PolytopeModel) -> serde_json::Value {
        let json = TableJson {
            schema: 1,
            basis: self.labels(),
            degrees: self.basis.iter().map(|m| format_rat(&model.newton_value(m))).collect(),
            table: self.cells(),
        };
        serde_json::to_value(json).expect("table serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use crate::spectrum::toric_spectrum_box;

    const SQUARE: &str = "u^2 + u^2*v^2 + v^2";

    fn e(v: &[u32]) -> ExpVec {
        ExpVec(v.to_vec())
    }

    fn setup(text: &str, mode: Mode) -> (Poly, PolytopeModel) {
        let p = parse_polynomial(text, mode, None).unwrap();
        let m = PolytopeModel::build(&p).unwrap();
        (p, m)
    }

    fn hint() -> Vec<ExpVec> {
        [[0, 0], [1, 1], [2, 2], [3, 3], [1, 0], [0, 1], [2, 1], [1, 2]]
            .iter()
            .map(|v| e(v))
            .collect()
    }

    #[test]
    fn products_in_b() {
        let (_, m) = setup(SQUARE, Mode::Global);
        assert_eq!(b_product(&m, &e(&[1, 0]), &e(&[1, 1])).terms, vec![(e(&[2, 1]), Rat::one())]);
        assert!(b_product(&m, &e(&[1, 0]), &e(&[0, 1])).is_zero());
        assert_eq!(b_product(&m, &e(&[0, 0]), &e(&[3, 1])).terms, vec![(e(&[3, 1]), Rat::one())]);
    }

    #[test]
    fn leading_class_terms() {
        let (p, m) = setup(SQUARE, Mode::Global);
        let f = leading_classes(&p, &m);
        assert_eq!(f[0].terms, vec![(e(&[2, 0]), rat_int(2)), (e(&[2, 2]), rat_int(2))]);
        assert_eq!(f[1].terms, vec![(e(&[0, 2]), rat_int(2)), (e(&[2, 2]), rat_int(2))]);
        // an interior monomial does not contribute
        let (p, m) = setup("u^2 + u^2*v^2 + v^2 + 7*u*v", Mode::Global);
        assert_eq!(leading_classes(&p, &m)[0].terms.len(), 2);
        let (p, m) = setup("u + v", Mode::Global);
        let f = leading_classes(&p, &m);
        assert_eq!(f[0].terms, vec![(e(&[1, 0]), Rat::one())]);
        assert_eq!(f[1].terms, vec![(e(&[0, 1]), Rat::one())]);
    }

    #[test]
    fn square_basis_matches_spectrum() {
        let (p, m) = setup(SQUARE, Mode::Global);
        let s = toric_spectrum_box(&m).unwrap();
        let b = quotient_basis(&p, &m, DegreeBound::Expected(&s), None).unwrap();
        assert_eq!(b.hilbert_series(), s);
        let one = b.degrees().find(|r| r.degree == Rat::one()).unwrap();
        assert_eq!(one.monomials.len(), 5);
        assert_eq!(one.relation_rank(), 2);
        assert_eq!(one.basis, vec![e(&[1, 2]), e(&[2, 1]), e(&[2, 2])]);
        let free = quotient_basis(&p, &m, DegreeBound::UpToDimension, None).unwrap();
        assert_eq!(free.hilbert_series(), s);
    }

    #[test]
    fn simplex_basis_is_one() {
        let (p, m) = setup("u1 + u2 + u3", Mode::Global);
        let b = quotient_basis(&p, &m, DegreeBound::UpToDimension, None).unwrap();
        assert_eq!(b.basis(), &[e(&[0, 0, 0])]);
    }

    #[test]
    fn hint_validation() {
        let (p, m) = setup(SQUARE, Mode::Global);
        let s = toric_spectrum_box(&m).unwrap();
        let b = quotient_basis(&p, &m, DegreeBound::Expected(&s), Some(&hint())).unwrap();
        let degrees: Vec<Rat> = b.basis().iter().map(|x| m.newton_value(x)).collect();
        assert_eq!(
            degrees,
            vec![rat(0, 1), rat(1, 2), rat(1, 1), rat(3, 2), rat(1, 2), rat(1, 2), rat(1, 1), rat(1, 1)]
        );
        // u^2 ≡ -u^2 v^2 in degree 1
        let mut swapped = hint();
        swapped[2] = e(&[2, 0]);
        assert!(quotient_basis(&p, &m, DegreeBound::Expected(&s), Some(&swapped)).is_ok());
        let mut dependent = hint();
        dependent[6] = e(&[2, 0]);
        assert!(matches!(
            quotient_basis(&p, &m, DegreeBound::Expected(&s), Some(&dependent)),
            Err(Error::HintNotABasis(_))
        ));
        assert!(matches!(
            quotient_basis(&p, &m, DegreeBound::Expected(&s), Some(&hint()[..7])),
            Err(Error::HintNotABasis(_))
        ));
    }

    #[test]
    fn square_table_entries() {
        let (p, m) = setup(SQUARE, Mode::Global);
        let s = toric_spectrum_box(&m).unwrap();
        let b = quotient_basis(&p, &m, DegreeBound::Expected(&s), Some(&hint())).unwrap();
        let t = product_table(&b).unwrap();
        let vars = p.vars().to_vec();
        let show = |x: &[u32], y: &[u32]| t.entry(&e(x), &e(y)).unwrap().format(&vars);
        assert_eq!(show(&[1, 0], &[1, 0]), "-u^2*v^2");
        assert_eq!(show(&[0, 1], &[0, 1]), "-u^2*v^2");
        assert_eq!(show(&[1, 1], &[1, 1]), "u^2*v^2");
        assert_eq!(show(&[1, 0], &[2, 1]), "-u^3*v^3");
        assert_eq!(show(&[0, 1], &[1, 2]), "-u^3*v^3");
        assert_eq!(show(&[2, 2], &[2, 2]), "0");
        assert_eq!(show(&[1, 0], &[0, 1]), "0");
        assert_eq!(show(&[0, 0], &[1, 2]), "u*v^2");
    }

    #[test]
    fn square_full_table() {
        let expected = [
            ["1", "u*v", "u^2*v^2", "u^3*v^3", "u", "v", "u^2*v", "u*v^2"],
            ["u*v", "u^2*v^2", "u^3*v^3", "0", "u^2*v", "u*v^2", "0", "0"],
            ["u^2*v^2", "u^3*v^3", "0", "0", "0", "0", "0", "0"],
            ["u^3*v^3", "0", "0", "0", "0", "0", "0", "0"],
            ["u", "u^2*v", "0", "0", "-u^2*v^2", "0", "-u^3*v^3", "0"],
            ["v", "u*v^2", "0", "0", "0", "-u^2*v^2", "0", "-u^3*v^3"],
            ["u^2*v", "0", "0", "0", "-u^3*v^3", "0", "0", "0"],
            ["u*v^2", "0", "0", "0", "0", "-u^3*v^3", "0", "0"],
        ];
        let (p, m) = setup(SQUARE, Mode::Global);
        let s = toric_spectrum_box(&m).unwrap();
        let b = quotient_basis(&p, &m, DegreeBound::Expected(&s), Some(&hint())).unwrap();
        let t = product_table(&b).unwrap();
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert_eq!(t.entries[i][j].format(p.vars()), *want, "entry ({i}, {j})");
            }
        }
        // associativity on all triples
        let basis = b.basis().to_vec();
        for x in &basis {
            for y in &basis {
                for w in &basis {
                    let xy = b.multiply(x, y).unwrap();
                    let yw = b.multiply(y, w).unwrap();
                    let left = b.multiply_classes(&xy, &GradedClass::monomial(w.clone(), m.newton_value(w))).unwrap();
                    let right = b.multiply_classes(&GradedClass::monomial(x.clone(), m.newton_value(x)), &yw).unwrap();
                    assert_eq!(left.terms, right.terms);
                }
            }
        }
        let text = t.to_text();
        assert_eq!(text.lines().count(), 9);
        let json = t.to_json(&m);
        assert_eq!(json["schema"], 1);
        assert_eq!(json["table"][4][6], "-u^3*v^3");
    }

    #[test]
    fn dimension_mismatch_detected() {
        let (p, m) = setup(SQUARE, Mode::Global);
        let wrong: SpectrumSeries = [(rat(0, 1), 1), (rat(1, 2), 2), (rat(1, 1), 3), (rat(3, 2), 1)]
            .into_iter()
            .collect();
        assert!(matches!(
            quotient_basis(&p, &m, DegreeBound::Expected(&wrong), None),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn monomial_list_parsing() {
        let vars = vec!["u".to_string(), "v".to_string()];
        assert_eq!(parse_monomials("1, u*v ,u^2*v", &vars).unwrap(), vec![e(&[0, 0]), e(&[1, 1]), e(&[2, 1])]);
        assert!(parse_monomials("2*u", &vars).is_err());
        assert!(parse_monomials("u+v", &vars).is_err());
        assert!(parse_monomials("w", &vars).is_err());
    }

    #[test]
    fn class_formatting() {
        let vars = vec!["u".to_string(), "v".to_string()];
        let c = GradedClass {
            degree: Rat::one(),
            terms: vec![(e(&[0, 0]), rat(-3, 2)), (e(&[1, 0]), rat_int(1)), (e(&[0, 1]), rat_int(-2))],
        };
        assert_eq!(c.format(&vars), "-3/2 + u - 2*v");
        assert_eq!(GradedClass::zero(Rat::one()).format(&vars), "0");
    }
}
