//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use newton_spectrum::checks::{run_checks, Status};
use newton_spectrum::ehrhart::{delta_from_counts, delta_from_spectrum, DeltaVector, EhrhartPolynomial};
use newton_spectrum::graded::{parse_monomials, product_table, quotient_basis, DegreeBound};
use newton_spectrum::numerics::{rat, Rat};
use newton_spectrum::orbifold::box_contributions;
use newton_spectrum::spectrum::{
    milnor_from_volumes, toric_spectrum_box, toric_spectrum_oracle,
};
use newton_spectrum::{
    milnor_number, parse_polynomial, spectrum_at_infinity, Error, ExpVec, Mode, Poly, PolytopeModel,
    SpectrumSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn series(terms: &[((i64, i64), i64)]) -> SpectrumSeries {
    terms.iter().map(|&((p, q), c)| (rat(p, q), c)).collect()
}

fn integral(coeffs: &[i64]) -> SpectrumSeries {
    coeffs.iter().enumerate().map(|(k, &c)| (rat(k as i64, 1), c)).collect()
}

fn setup(text: &str, mode: Mode) -> Result<(Poly, PolytopeModel), String> {
    let p = parse_polynomial(text, mode, None).map_err(|e| e.to_string())?;
    let m = PolytopeModel::build(&p).map_err(|e| e.to_string())?;
    Ok((p, m))
}

fn check_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    ensure!(got == want, "{what}: got {got:?}, want {want:?}");
    Ok(())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_newton-spectrum"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn square_example() -> Outcome {
    let (p, m) = setup("u^2 + u^2*v^2 + v^2", Mode::Global)?;
    let toric = toric_spectrum_box(&m).map_err(|e| e.to_string())?;
    check_eq("toric spectrum", &toric, &series(&[((0, 1), 1), ((1, 2), 3), ((1, 1), 3), ((3, 2), 1)]))?;
    check_eq("mu_P", m.normalized_volume(), 8)?;
    let inf = spectrum_at_infinity(&p, None).map_err(|e| e.to_string())?;
    check_eq("spectrum at infinity", &inf, &series(&[((1, 2), 1), ((1, 1), 3), ((3, 2), 1)]))?;
    check_eq("mu_f", milnor_number(&p, None).map_err(|e| e.to_string())?, 5)?;
    let (code, out, _) = cli(&["spectrum", "u^2 + u^2*v^2 + v^2"]);
    check_eq("cli exit", code, 0)?;
    check_eq("cli first line", out.lines().next(), Some("1 + 3 z^{1/2} + 3 z + z^{3/2}"))?;
    Ok(format!("toric {toric}, at infinity {inf}"))
}

fn threefold_example() -> Outcome {
    let (p, m) = setup("u + v + w + u^2*v^2*w^2 + v^2*w^2", Mode::Global)?;
    let toric = toric_spectrum_box(&m).map_err(|e| e.to_string())?;
    check_eq(
        "toric spectrum",
        &toric,
        &series(&[((0, 1), 1), ((1, 2), 2), ((1, 1), 3), ((3, 2), 3), ((2, 1), 2), ((5, 2), 1)]),
    )?;
    check_eq("mu_P", m.normalized_volume(), 12)?;
    let inf = spectrum_at_infinity(&p, None).map_err(|e| e.to_string())?;
    check_eq(
        "spectrum at infinity",
        &inf,
        &series(&[((1, 2), 1), ((1, 1), 2), ((3, 2), 2), ((2, 1), 2), ((5, 2), 1)]),
    )?;
    check_eq("mu_f", milnor_number(&p, None).map_err(|e| e.to_string())?, 8)?;
    let contributions = box_contributions(&m).map_err(|e| e.to_string())?;
    let by_point: BTreeMap<Vec<u32>, SpectrumSeries> =
        contributions.into_iter().map(|c| (c.v.0, c.contribution)).collect();
    let half = rat(1, 2);
    let expected = [
        (vec![0, 0, 0], integral(&[1, 2, 1])),
        (vec![1, 1, 1], integral(&[1, 2, 1]).shifted(&half)),
        (vec![1, 2, 2], integral(&[0, 1, 1])),
        (vec![0, 1, 1], integral(&[1, 1]).shifted(&half)),
    ];
    check_eq("box points", by_point.len(), expected.len())?;
    for (v, want) in &expected {
        check_eq(&format!("contribution of {v:?}"), by_point.get(v), Some(want))?;
    }
    Ok(format!("toric {toric}, at infinity {inf}, 4 box contributions"))
}

fn product_table_example() -> Outcome {
    let (p, m) = setup("u^2 + u^2*v^2 + v^2", Mode::Global)?;
    let toric = toric_spectrum_box(&m).map_err(|e| e.to_string())?;
    let hint = parse_monomials("1,u*v,u^2*v^2,u^3*v^3,u,v,u^2*v,u*v^2", p.vars()).map_err(|e| e.to_string())?;
    let basis = quotient_basis(&p, &m, DegreeBound::Expected(&toric), Some(&hint)).map_err(|e| e.to_string())?;
    let table = product_table(&basis).map_err(|e| e.to_string())?;
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
    let mut matched = 0;
    for (i, row) in expected.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            check_eq(&format!("entry ({i},{j})"), table.entries[i][j].format(p.vars()).as_str(), *want)?;
            matched += 1;
        }
    }
    Ok(format!("{matched}/64 entries match"))
}

fn simplex_examples() -> Outcome {
    for n in 2..=4 {
        let text: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
        let (_, m) = setup(&text.join(" + "), Mode::Global)?;
        let s = toric_spectrum_box(&m).map_err(|e| e.to_string())?;
        check_eq("simplex spectrum", &s, &SpectrumSeries::one())?;
        let mut want = vec![0; n + 1];
        want[0] = 1;
        check_eq("simplex delta", delta_from_spectrum(&s, n).map_err(|e| e.to_string())?, DeltaVector(want))?;
    }
    for c in [2i64, 3, 5] {
        let (_, m) = setup(&format!("u1 + u2 + u3^{c}"), Mode::Global)?;
        let s = toric_spectrum_box(&m).map_err(|e| e.to_string())?;
        let want: SpectrumSeries = (0..c).map(|i| (rat(i, c), 1)).collect();
        check_eq(&format!("c = {c} spectrum"), &s, &want)?;
        let delta = delta_from_spectrum(&s, 3).map_err(|e| e.to_string())?;
        check_eq(&format!("c = {c} delta"), &delta, &DeltaVector(vec![1, c - 1, 0, 0]))?;
        let poly = EhrhartPolynomial::new(delta);
        let text = if c == 2 {
            "C(z+3,3) + C(z+2,3)".to_string()
        } else {
            format!("C(z+3,3) + {} C(z+2,3)", c - 1)
        };
        check_eq(&format!("c = {c} Ehrhart polynomial"), poly.to_string(), text)?;
        for l in 0..=4u32 {
            check_eq(&format!("c = {c} L({l})"), poly.eval(i64::from(l)), m.lattice_count(l) as i64)?;
        }
    }
    Ok("simplices n = 2..4 and c = 2, 3, 5".into())
}

fn local_quintic_example() -> Outcome {
    let (p, m) = setup("x^5 + x^2*y^2 + y^5", Mode::Local)?;
    check_eq("mu_0", milnor_number(&p, None).map_err(|e| e.to_string())?, 11)?;
    check_eq("mu_P", m.normalized_volume(), 20)?;
    let toric = toric_spectrum_box(&m).map_err(|e| e.to_string())?;
    let want_toric = series(&[
        ((0, 1), 1),
        ((1, 5), 2),
        ((2, 5), 2),
        ((1, 2), 1),
        ((3, 5), 2),
        ((7, 10), 2),
        ((4, 5), 2),
        ((9, 10), 2),
        ((1, 1), 1),
        ((11, 10), 2),
        ((13, 10), 2),
        ((3, 2), 1),
    ]);
    check_eq("local toric spectrum", &toric, &want_toric)?;
    let local = spectrum_at_infinity(&p, None).map_err(|e| e.to_string())?;
    let want_local = series(&[
        ((1, 2), 1),
        ((1, 1), 1),
        ((3, 2), 1),
        ((7, 10), 2),
        ((9, 10), 2),
        ((11, 10), 2),
        ((13, 10), 2),
    ]);
    check_eq("local singularity spectrum", &local, &want_local)?;
    let delta = delta_from_spectrum(&toric, 2).map_err(|e| e.to_string())?;
    check_eq("delta", &delta, &DeltaVector(vec![1, 14, 5]))?;
    check_eq("delta from counts", delta_from_counts(&m).map_err(|e| e.to_string())?, delta.clone())?;
    check_eq(
        "Ehrhart polynomial",
        EhrhartPolynomial::new(delta).to_string(),
        "C(z+2,2) + 14 C(z+1,2) + 5 C(z,2)".to_string(),
    )?;
    let (code, out, _) = cli(&["delta", "--local", "x^5 + x^2*y^2 + y^5"]);
    check_eq("cli delta", (code, out.trim()), (0, "1 + 14 z + 5 z^2"))?;
    Ok(format!("local spectrum {local}"))
}

/// A random convenient polynomial: a pure power on each axis plus a few
/// extra monomials, all coordinates at most 6, generic nonzero coefficients.
fn random_poly(rng: &mut ChaCha8Rng, n: usize, mode: Mode) -> Poly {
    let vars: Vec<String> = ["u", "v", "w"][..n].iter().map(|s| s.to_string()).collect();
    let mut terms: BTreeMap<ExpVec, Rat> = BTreeMap::new();
    let coeff = |rng: &mut ChaCha8Rng| {
        let c: i64 = rng.gen_range(1..=97);
        rat(if rng.gen_bool(0.5) { c } else { -c }, 1)
    };
    for i in 0..n {
        let a = rng.gen_range(1..=6);
        terms.insert(ExpVec::unit(n, i, a), coeff(rng));
    }
    let extra = rng.gen_range(0..=3);
    for _ in 0..extra {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        terms.insert(ExpVec(v), coeff(rng));
    }
    Poly::from_terms(vars, terms, mode).expect("random support is valid")
}

/// Support of a box `[0,a]×[0,b]×[0,c]` with random coefficients; its
/// facets away from the origin are rectangles, not simplices.
fn random_box_poly(rng: &mut ChaCha8Rng) -> Poly {
    let vars: Vec<String> = ["u", "v", "w"].iter().map(|s| s.to_string()).collect();
    let sides: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
    let mut terms: BTreeMap<ExpVec, Rat> = BTreeMap::new();
    for mask in 1u32..8 {
        let v: Vec<u32> = (0..3).map(|i| if mask & (1 << i) != 0 { sides[i] } else { 0 }).collect();
        let c: i64 = rng.gen_range(1..=97);
        terms.insert(ExpVec(v), rat(if rng.gen_bool(0.5) { c } else { -c }, 1));
    }
    Poly::from_terms(vars, terms, Mode::Global).expect("box support is valid")
}

fn corpus() -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    (0..60)
        .map(|i| {
            if i % 6 == 5 {
                return random_box_poly(&mut rng);
            }
            let n = if i % 2 == 0 { 2 } else { 3 };
            let mode = if i % 5 == 4 { Mode::Local } else { Mode::Global };
            random_poly(&mut rng, n, mode)
        })
        .collect()
}

fn oracle_triangle(corpus: &[Poly]) -> Outcome {
    let mut three_way = 0;
    let mut two_way = 0;
    for p in corpus {
        let m = PolytopeModel::build(p).map_err(|e| format!("{p}: {e}"))?;
        let oracle = toric_spectrum_oracle(&m, None).map_err(|e| format!("{p}: oracle {e}"))?;
        let koszul = quotient_basis(p, &m, DegreeBound::UpToDimension, None)
            .map_err(|e| format!("{p}: koszul {e}"))?
            .hilbert_series();
        ensure!(koszul == oracle, "{p}: koszul {koszul} vs series {oracle}");
        match toric_spectrum_box(&m) {
            Ok(b) => {
                ensure!(b == oracle, "{p}: box {b} vs series {oracle}");
                three_way += 1;
            }
            Err(Error::NotSimplicialFaces(_)) => two_way += 1,
            Err(e) => return Err(format!("{p}: box {e}")),
        }
    }
    ensure!(corpus.len() >= 50, "corpus too small");
    Ok(format!("{} inputs: {three_way} three-way, {two_way} series vs koszul", corpus.len()))
}

const PROPERTY_CHECKS: &[&str] = &[
    "spectrum at infinity is symmetric",
    "exponent 0 has multiplicity 1",
    "sub-1 part = lattice series",
    "z coefficient = boundary points - n",
    "toric mass = normalized volume",
    "delta normalisation",
    "delta from spectrum = delta from counts",
    "hodge-deligne duality",
    "orbifold dimensions = toric spectrum",
];

fn property_suite(corpus: &[Poly]) -> Outcome {
    let mut passes = 0;
    let mut skipped = 0;
    for p in corpus {
        let report = run_checks(p, None).map_err(|e| format!("{p}: {e}"))?;
        for name in PROPERTY_CHECKS {
            let o = report.get(name).ok_or_else(|| format!("check `{name}` missing"))?;
            match o.status {
                Status::Pass => passes += 1,
                Status::Skipped if o.name.contains("hodge") || o.name.contains("orbifold") => skipped += 1,
                _ => return Err(format!("{p}: {name}: {:?} {}", o.status, o.detail)),
            }
        }
        let mu = milnor_from_volumes(p).map_err(|e| e.to_string())?;
        let s = spectrum_at_infinity(p, None).map_err(|e| e.to_string())?;
        ensure!(s.eval_at_one() == mu, "{p}: milnor {mu} vs spectrum mass {}", s.eval_at_one());
    }
    Ok(format!("{passes} checks passed, {skipped} skipped on non-simplicial fans"))
}

fn degenerate_handling() -> Outcome {
    let p = parse_polynomial("u*v + u^3", Mode::Global, None).map_err(|e| e.to_string())?;
    check_eq("library rejection", p.check_convenient(), Err(Error::NotConvenient { missing: vec!["v".into()] }))?;
    let (code, out, err) = cli(&["spectrum", "u*v + u^3 + w^2"]);
    check_eq("non-convenient exit", code, 1)?;
    ensure!(out.is_empty(), "non-convenient printed `{out}`");
    ensure!(err.contains("no pure power of v"), "missing axis not named: {err}");

    check_eq(
        "constant term",
        parse_polynomial("1 + x^2 + y^3", Mode::Local, None).map(|_| ()),
        Err(Error::ConstantTermInLocalMode),
    )?;
    let (code, _, err) = cli(&["spectrum", "--local", "1 + x^2 + y^3"]);
    check_eq("constant term exit", code, 1)?;
    ensure!(err.contains("constant term"), "constant term not reported: {err}");

    let cube = "u^2 + 2*v^2 + 3*w^2 + 5*u^2*v^2 + 7*v^2*w^2 + 11*u^2*w^2 + 13*u^2*v^2*w^2";
    let (code, out, err) = cli(&["spectrum", "--max-truncation", "4", cube]);
    check_eq("cap exceeded exit", code, 2)?;
    ensure!(out.is_empty(), "cap exceedance still printed `{out}`");
    ensure!(err.contains("truncation cap 4"), "cap not reported: {err}");
    let (code, out, _) = cli(&["spectrum", cube]);
    check_eq("default cap exit", code, 0)?;
    check_eq("default cap route", out.lines().nth(1), Some("route: oracle"))?;
    Ok("non-convenient, constant term and cap exceedance all rejected".into())
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion<'_>> = vec![
        ("square example", Box::new(square_example)),
        ("threefold example", Box::new(threefold_example)),
        ("product table", Box::new(product_table_example)),
        ("simplex Ehrhart examples", Box::new(simplex_examples)),
        ("local quintic", Box::new(local_quintic_example)),
        ("oracle triangle", Box::new(|| oracle_triangle(&corpus))),
        ("property suite", Box::new(|| property_suite(&corpus))),
        ("degenerate handling", Box::new(degenerate_handling)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(note) => println!("PASS criterion {}: {name} ({note})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
