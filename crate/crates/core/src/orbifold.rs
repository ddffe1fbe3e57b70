//! Hodge-Deligne polynomials of fan cones and graded dimensions of
//! orbifold cohomology.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Rat, SpectrumSeries};
use crate::poly::ExpVec;
use crate::polytope::{Cone, PolytopeModel};

/// `E_v = Σ_{τ ∈ Σ, σ(v) ⊆ τ} (z-1)^{n - dim τ}`; with `relative` the sum
/// runs over `Σ*`, the cones over faces of `𝓕(P)`, and skips the zero cone.
pub fn hodge_deligne(m: &PolytopeModel, v: &ExpVec, relative: bool) -> SpectrumSeries {
    let n = m.dim();
    let sigma = m.smallest_cone(v);
    let mut cones: Vec<Cone> = Vec::new();
    if !relative {
        cones.push(Cone::Zero);
    }
    cones.extend(
        m.faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| !relative || !f.in_coordinate_hyperplane)
            .map(|(i, _)| Cone::Face(i)),
    );
    let mut total = SpectrumSeries::new();
    for tau in cones {
        if m.cone_contains(tau, sigma) {
            let k = (n - m.cone_dim(tau)) as u32;
            total = total + SpectrumSeries::z_minus_one_pow(k);
        }
    }
    total
}

/// One lattice point of `Box(P)` with its contribution `E_v*(z)·z^{ν(v)}`.
#[derive(Clone, Debug, Serialize)]
pub struct BoxContribution {
    pub v: ExpVec,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub nu: Rat,
    pub e_star: SpectrumSeries,
    pub contribution: SpectrumSeries,
}

/// `∪_{Δ ∈ 𝓕(P)} Box(Δ)` with each lattice point once, sorted.
pub fn box_of_p(m: &PolytopeModel) -> Result<Vec<(ExpVec, Rat)>> {
    if !m.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let mut points: BTreeMap<ExpVec, Rat> = BTreeMap::new();
    for (idx, _) in m.f_of_p() {
        for b in m.box_points(idx)? {
            points.entry(b.v).or_insert(b.nu);
        }
    }
    Ok(points.into_iter().collect())
}

pub fn box_contributions(m: &PolytopeModel) -> Result<Vec<BoxContribution>> {
    let points = box_of_p(m)?;
    Ok(points
        .into_par_iter()
        .map(|(v, nu)| {
            let e_star = hodge_deligne(m, &v, true);
            let contribution = e_star.shifted(&nu);
            BoxContribution { v, nu, e_star, contribution }
        })
        .collect())
}

/// `Σ_{v ∈ Box(P)} E_v*(z) z^{ν(v)}`.
pub fn orbifold_dimensions(m: &PolytopeModel) -> Result<SpectrumSeries> {
    Ok(box_contributions(m)?
        .iter()
        .fold(SpectrumSeries::new(), |acc, c| &acc + &c.contribution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, rat_int};
    use crate::poly::{parse_polynomial, Mode};
    use crate::spectrum::toric_spectrum_box;

    fn model(text: &str, mode: Mode) -> PolytopeModel {
        PolytopeModel::build(&parse_polynomial(text, mode, None).unwrap()).unwrap()
    }

    fn poly(coeffs: &[i64]) -> SpectrumSeries {
        coeffs.iter().enumerate().map(|(k, &c)| (rat_int(k as i64), c)).collect()
    }

    fn e(v: &[u32]) -> ExpVec {
        ExpVec(v.to_vec())
    }

    #[test]
    fn square_hodge_deligne() {
        let m = model("u^2 + u^2*v^2 + v^2", Mode::Global);
        assert_eq!(hodge_deligne(&m, &e(&[0, 0]), true), poly(&[1, 1]));
        assert_eq!(hodge_deligne(&m, &e(&[0, 0]), false), poly(&[0, 1, 1]));
        // (2,1) lies in the interior of a 2-cone
        assert_eq!(hodge_deligne(&m, &e(&[2, 1]), true), poly(&[1]));
        assert_eq!(hodge_deligne(&m, &e(&[2, 1]), false), poly(&[1]));
        let e0 = hodge_deligne(&m, &e(&[0, 0]), false);
        assert_eq!(e0.reciprocal_reflect(2), hodge_deligne(&m, &e(&[0, 0]), true));
    }

    #[test]
    fn simplex_relative_polynomial_is_one() {
        let m = model("u1 + u2 + u3", Mode::Global);
        assert_eq!(hodge_deligne(&m, &e(&[0, 0, 0]), true), poly(&[1]));
        assert_eq!(orbifold_dimensions(&m).unwrap(), SpectrumSeries::one());
    }

    #[test]
    fn threefold_contributions() {
        let m = model("u + v + w + u^2*v^2*w^2 + v^2*w^2", Mode::Global);
        let contributions = box_contributions(&m).unwrap();
        let find = |v: &[u32]| {
            contributions.iter().find(|c| c.v == e(v)).unwrap().contribution.clone()
        };
        assert_eq!(find(&[0, 0, 0]), poly(&[1, 2, 1]));
        assert_eq!(find(&[1, 1, 1]), poly(&[1, 2, 1]).shifted(&rat(1, 2)));
        assert_eq!(find(&[1, 2, 2]), poly(&[0, 1, 1]));
        assert_eq!(find(&[0, 1, 1]), poly(&[1, 1]).shifted(&rat(1, 2)));
        assert_eq!(contributions.len(), 4);
        assert_eq!(orbifold_dimensions(&m).unwrap(), toric_spectrum_box(&m).unwrap());
    }

    #[test]
    fn matches_box_formula() {
        for (text, mode) in [
            ("u^2 + u^2*v^2 + v^2", Mode::Global),
            ("x^5 + x^2*y^2 + y^5", Mode::Local),
            ("u1 + u2 + u3^5", Mode::Global),
        ] {
            let m = model(text, mode);
            assert_eq!(orbifold_dimensions(&m).unwrap(), toric_spectrum_box(&m).unwrap(), "{text}");
        }
    }

    #[test]
    fn non_simplicial_rejected() {
        let cube = model("u^2 + v^2 + w^2 + u^2*v^2 + v^2*w^2 + u^2*w^2 + u^2*v^2*w^2", Mode::Global);
        assert_eq!(orbifold_dimensions(&cube), Err(Error::NotSimplicial));
    }
}
