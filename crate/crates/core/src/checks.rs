//! Cross-checks between the independent computations, run as one suite.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::ehrhart::{delta_from_counts, delta_from_spectrum, EhrhartPolynomial};
use crate::error::{Error, Result};
use crate::graded::{quotient_basis, DegreeBound};
use crate::numerics::{rat_int, Rat, SpectrumSeries};
use crate::orbifold::{box_of_p, hodge_deligne, orbifold_dimensions};
use crate::poly::{ExpVec, Poly};
use crate::polytope::PolytopeModel;
use crate::spectrum::{
    boundary_lattice_points, milnor_from_volumes, newton_series_below, spectrum_at_infinity,
    toric_spectrum_box, toric_spectrum_oracle,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    fn push(&mut self, name: &'static str, result: Result<Option<String>>) {
        let (status, detail) = match result {
            Ok(None) => (Status::Pass, String::new()),
            Ok(Some(why)) => (Status::Fail, why),
            Err(Error::NotSimplicial) | Err(Error::NotSimplicialFaces(_)) => {
                (Status::Skipped, "fan is not simplicial".to_string())
            }
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.outcomes.push(CheckOutcome { name, status, detail });
    }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(left: T, right: T, what: &str) -> Option<String> {
    (left != right).then(|| format!("{what}: {left} != {right}"))
}

/// Names of every check, in report order.
pub const CHECK_NAMES: &[&str] = &[
    "box formula = generating series",
    "koszul dimensions = toric spectrum",
    "toric mass = normalized volume",
    "exponent 0 has multiplicity 1",
    "simplicial exponents below n",
    "sub-1 part = lattice series",
    "z coefficient = boundary points - n",
    "integral shifts",
    "spectrum at infinity is symmetric",
    "milnor routes agree",
    "delta normalisation",
    "delta from spectrum = delta from counts",
    "ehrhart polynomial = lattice counts",
    "hodge-deligne duality",
    "relative hodge-deligne nonnegative",
    "orbifold dimensions = toric spectrum",
];

/// Runs the whole invariant suite on a convenient polynomial. Input errors
/// are returned directly; failures of individual invariants are recorded.
pub fn run_checks(p: &Poly, cap: Option<u32>) -> Result<CheckReport> {
    p.check_convenient()?;
    let m = PolytopeModel::build(p)?;
    let n = m.dim();
    let mu_p = m.normalized_volume();
    let mut report = CheckReport { outcomes: Vec::new() };

    let oracle = toric_spectrum_oracle(&m, cap);
    let boxed = toric_spectrum_box(&m);
    report.push(CHECK_NAMES[0], match (&boxed, &oracle) {
        (Ok(b), Ok(o)) => Ok(expect_eq(b, o, "box vs series")),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    });
    let toric = match (boxed, oracle) {
        (Ok(s), _) | (_, Ok(s)) => s,
        (Err(_), Err(e)) => {
            report.push(CHECK_NAMES[1], Err(e));
            return Ok(report);
        }
    };

    report.push(CHECK_NAMES[1], (|| {
        let basis = quotient_basis(p, &m, DegreeBound::UpToDimension, None)?;
        Ok(expect_eq(&basis.hilbert_series(), &toric, "koszul vs toric"))
    })());
    report.push(CHECK_NAMES[2], Ok(expect_eq(toric.eval_at_one(), mu_p, "mass vs μ_P")));
    report.push(
        CHECK_NAMES[3],
        Ok(expect_eq(toric.coefficient(&Rat::zero()), 1, "multiplicity of 0")),
    );
    report.push(CHECK_NAMES[4], if m.is_simplicial() {
        let top = toric.max_exponent().cloned().unwrap_or_else(Rat::zero);
        Ok((top >= rat_int(n as i64)).then(|| format!("exponent {top} reaches n")))
    } else {
        Err(Error::NotSimplicial)
    });
    report.push(CHECK_NAMES[5], Ok(expect_eq(
        &toric.restricted_to(&Rat::zero(), &Rat::one()),
        &newton_series_below(&m, 1),
        "sub-1 part",
    )));
    report.push(CHECK_NAMES[6], Ok(expect_eq(
        toric.coefficient(&Rat::one()),
        boundary_lattice_points(&m) as i64 - n as i64,
        "coefficient of z",
    )));
    report.push(CHECK_NAMES[7], integral_shifts(&m, &toric));

    report.push(CHECK_NAMES[8], (|| {
        let s = spectrum_at_infinity(p, cap)?;
        Ok(expect_eq(&s.reciprocal_reflect(n as i64), &s, "z^n S(1/z) vs S"))
    })());
    report.push(CHECK_NAMES[9], (|| {
        let s = spectrum_at_infinity(p, cap)?;
        Ok(expect_eq(s.eval_at_one(), milnor_from_volumes(p)?, "spectrum mass vs volumes"))
    })());

    let delta = delta_from_spectrum(&toric, n);
    report.push(CHECK_NAMES[10], delta.clone().map(|d| {
        if d.entries()[0] != 1 {
            Some(format!("δ_0 = {}", d.entries()[0]))
        } else {
            expect_eq(d.total(), mu_p, "Σδ vs μ_P")
        }
    }));
    report.push(CHECK_NAMES[11], (|| {
        let counted = delta_from_counts(&m)?;
        Ok(expect_eq(format!("{:?}", delta.clone()?.0), format!("{:?}", counted.0), "δ"))
    })());
    report.push(CHECK_NAMES[12], (|| {
        let poly = EhrhartPolynomial::new(delta.clone()?);
        for l in 0..=n as u32 + 1 {
            let counted = m.lattice_count(l) as i64;
            if poly.eval(i64::from(l)) != counted {
                return Ok(Some(format!("L({l}) = {} but {counted} points", poly.eval(i64::from(l)))));
            }
        }
        Ok(None)
    })());

    let origin = ExpVec::zero(n);
    report.push(CHECK_NAMES[13], if m.is_simplicial() {
        let e0 = hodge_deligne(&m, &origin, false);
        let e0_star = hodge_deligne(&m, &origin, true);
        Ok(expect_eq(&e0.reciprocal_reflect(n as i64), &e0_star, "z^n E_0(1/z) vs E_0*"))
    } else {
        Err(Error::NotSimplicial)
    });
    report.push(CHECK_NAMES[14], (|| {
        for (v, _) in box_of_p(&m)? {
            let e = hodge_deligne(&m, &v, true);
            if !e.is_nonnegative() {
                return Ok(Some(format!("E_v* = {e} at v = {v}")));
            }
        }
        Ok(None)
    })());
    report.push(CHECK_NAMES[15], orbifold_dimensions(&m).map(|o| expect_eq(&o, &toric, "orbifold vs toric")));

    Ok(report)
}

/// For `v ∈ Box(P)` off the coordinate hyperplanes, `ν(v), ν(v)+1, …,
/// ν(v)+n-dim σ(v)` all occur in the toric spectrum.
fn integral_shifts(m: &PolytopeModel, toric: &SpectrumSeries) -> Result<Option<String>> {
    for (v, nu) in box_of_p(m)? {
        if v.0.contains(&0) {
            continue;
        }
        let top = m.dim() - m.cone_dim(m.smallest_cone(&v));
        for j in 0..=top {
            let e = &nu + rat_int(j as i64);
            if toric.coefficient(&e) < 1 {
                return Ok(Some(format!("v = {v}: exponent {e} missing")));
            }
        }
    }
    Ok(None)
}
