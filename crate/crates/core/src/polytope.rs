//! Newton polytope (global case) and Newton polyhedron (local case) of a
//! convenient polynomial, built by exhaustive exact hyperplane enumeration.
//!
//! Both cases share one representation: the facets of the Newton boundary
//! with forms `u_F` normalised so that `<u_F, b> = 1` on the facet, the
//! vertices different from the origin, and the full face lattice of the
//! Newton boundary. The Newton function is the max (global) or min (local)
//! of the facet forms. Internally every form is also kept as an integer
//! vector over a common denominator `D`, so `D·ν(v)` is an integer and
//! lattice enumeration never touches big rationals.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{par_collect, par_histogram};
use crate::linalg::{det_i64, inverse, rank, solve, to_rat};
use crate::numerics::{common_denominator, format_rat, Rat};
use crate::poly::{ExpVec, Mode, Poly};

/// A facet of the Newton boundary: `<normal, b> = 1` on its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetForm {
    pub normal: Vec<Rat>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Sorted indices into [`PolytopeModel::vertices`].
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Some coordinate vanishes on every vertex.
    pub in_coordinate_hyperplane: bool,
    /// Boundary facets containing this face.
    pub facets: Vec<usize>,
    pub is_simplex: bool,
}

/// A cone of the fan over the Newton boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cone {
    Zero,
    Face(usize),
}

/// Lattice point `v = Σ q_ℓ b_ℓ` of the half-open parallelepiped over a
/// simplex face, `q_ℓ ∈ [0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxPoint {
    pub v: ExpVec,
    pub host_face: usize,
    pub q: Vec<Rat>,
    pub nu: Rat,
}

#[derive(Clone, Debug)]
pub struct PolytopeModel {
    mode: Mode,
    n: usize,
    vertices: Vec<ExpVec>,
    facets: Vec<FacetForm>,
    faces: Vec<Face>,
    face_index: HashMap<Vec<usize>, usize>,
    weights: Vec<Vec<i64>>,
    denom: i64,
    max_coord: u32,
}

impl PolytopeModel {
    pub fn build(p: &Poly) -> Result<Self> {
        p.check_convenient()?;
        let support: Vec<ExpVec> = p.support().filter(|e| !e.is_zero()).cloned().collect();
        Self::from_support(p.mode(), p.nvars(), &support)
    }

    /// Builds the model from the nonzero support points directly.
    pub fn from_support(mode: Mode, n: usize, points: &[ExpVec]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let points: Vec<ExpVec> = points
            .iter()
            .filter(|e| !e.is_zero())
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if let Some(bad) = points.iter().find(|e| e.len() != n) {
            return Err(Error::InvalidInput(format!("point {bad} is not in dimension {n}")));
        }
        let missing: Vec<String> = (0..n)
            .filter(|&i| !points.iter().any(|e| e.pure_power_axis() == Some(i)))
            .map(|i| format!("x{}", i + 1))
            .collect();
        if !missing.is_empty() {
            return Err(Error::NotConvenient { missing });
        }

        let normals = enumerate_facet_normals(mode, n, &points);
        if normals.is_empty() {
            return Err(Error::NotFullDimensional);
        }

        // A point is a vertex iff the normals of the facets through it,
        // together with the coordinate hyperplanes through it, span ℝⁿ.
        let on_facet = |normal: &[Rat], p: &ExpVec| dot(normal, p).is_one();
        let vertices: Vec<ExpVec> = points
            .iter()
            .filter(|p| {
                let mut active: Vec<Vec<Rat>> = normals
                    .iter()
                    .filter(|u| on_facet(u, p))
                    .cloned()
                    .collect();
                if active.is_empty() {
                    return false;
                }
                for i in (0..n).filter(|&i| p.0[i] == 0) {
                    let mut e = vec![Rat::zero(); n];
                    e[i] = Rat::one();
                    active.push(e);
                }
                rank(&active) == n
            })
            .cloned()
            .collect();

        let facets: Vec<FacetForm> = normals
            .into_iter()
            .map(|normal| {
                let vs = (0..vertices.len())
                    .filter(|&j| on_facet(&normal, &vertices[j]))
                    .collect();
                FacetForm {
                    normal,
                    vertices: vs,
                }
            })
            .collect();

        let faces = enumerate_faces(n, &vertices, &facets);
        let face_index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();

        let denom_big = common_denominator(facets.iter().flat_map(|f| f.normal.iter()));
        let denom = denom_big
            .to_i64()
            .ok_or(Error::Overflow("scaling facet forms"))?;
        let weights = facets
            .iter()
            .map(|f| {
                f.normal
                    .iter()
                    .map(|u| {
                        (u * Rat::from_integer(denom_big.clone()))
                            .to_integer()
                            .to_i64()
                            .ok_or(Error::Overflow("scaling facet forms"))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let max_coord = vertices
            .iter()
            .flat_map(|v| v.0.iter().copied())
            .max()
            .unwrap_or(1);

        Ok(PolytopeModel {
            mode,
            n,
            vertices,
            facets,
            faces,
            face_index,
            weights,
            denom,
            max_coord,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[ExpVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[FacetForm] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, idx: usize) -> &Face {
        &self.faces[idx]
    }

    /// Index of the face with exactly these (sorted) vertices.
    pub fn face_by_vertices(&self, vertices: &[usize]) -> Option<usize> {
        self.face_index.get(vertices).copied()
    }

    /// Faces of the Newton boundary not contained in a coordinate
    /// hyperplane.
    pub fn f_of_p(&self) -> impl Iterator<Item = (usize, &Face)> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.in_coordinate_hyperplane)
    }

    /// All Newton-boundary faces are simplices.
    pub fn is_simplicial(&self) -> bool {
        self.faces.iter().all(|f| f.is_simplex)
    }

    /// Common denominator `D` of the facet forms.
    pub fn denominator(&self) -> i64 {
        self.denom
    }

    pub fn max_coordinate(&self) -> u32 {
        self.max_coord
    }

    /// `D · ν(v)`, an integer.
    pub fn scaled_value(&self, v: &[u32]) -> i64 {
        let values = self
            .weights
            .iter()
            .map(|w| w.iter().zip(v).map(|(a, &b)| a * i64::from(b)).sum::<i64>());
        let best = match self.mode {
            Mode::Global => values.max(),
            Mode::Local => values.min(),
        };
        best.unwrap_or(0)
    }

    pub fn scaled_to_rat(&self, scaled: i64) -> Rat {
        Rat::new(BigInt::from(scaled), BigInt::from(self.denom))
    }

    /// Newton function: `max_F <u_F, v>` (global) or `min_F <u_F, v>`
    /// (local).
    pub fn newton_value(&self, v: &ExpVec) -> Rat {
        self.scaled_to_rat(self.scaled_value(&v.0))
    }

    /// `a` and `b` lie in a common cone of the fan, i.e. the Newton
    /// function is additive on them.
    pub fn same_cone(&self, a: &ExpVec, b: &ExpVec) -> bool {
        self.scaled_value(&a.add(b).0) == self.scaled_value(&a.0) + self.scaled_value(&b.0)
    }

    /// Smallest cone `σ(v)` of the fan containing `v`.
    pub fn smallest_cone(&self, v: &ExpVec) -> Cone {
        if v.is_zero() {
            return Cone::Zero;
        }
        // The minimal face containing v/ν(v) is the intersection of all
        // facets (boundary and coordinate) through it.
        let s = self.scaled_value(&v.0);
        let mut candidate: Vec<usize> = (0..self.vertices.len())
            .filter(|&j| {
                (0..self.n).all(|i| v.0[i] != 0 || self.vertices[j].0[i] == 0)
            })
            .collect();
        for (f, w) in self.facets.iter().zip(&self.weights) {
            let value: i64 = w.iter().zip(&v.0).map(|(a, &b)| a * i64::from(b)).sum();
            if value == s {
                candidate.retain(|j| f.vertices.binary_search(j).is_ok());
            }
        }
        let idx = self
            .face_by_vertices(&candidate)
            .expect("intersection of facets through a boundary point is a face");
        Cone::Face(idx)
    }

    /// Dimension of a cone: 0 for the zero cone, `dim Δ + 1` otherwise.
    pub fn cone_dim(&self, c: Cone) -> usize {
        match c {
            Cone::Zero => 0,
            Cone::Face(i) => self.faces[i].dim + 1,
        }
    }

    /// `a ⊆ b` as cones of the fan.
    pub fn cone_contains(&self, outer: Cone, inner: Cone) -> bool {
        match (outer, inner) {
            (_, Cone::Zero) => true,
            (Cone::Zero, Cone::Face(_)) => false,
            (Cone::Face(o), Cone::Face(i)) => is_subset(&self.faces[i].vertices, &self.faces[o].vertices),
        }
    }

    /// Lattice points of the half-open parallelepiped spanned by the
    /// vertices of a simplex face.
    pub fn box_points(&self, face_idx: usize) -> Result<Vec<BoxPoint>> {
        let face = &self.faces[face_idx];
        if !face.is_simplex {
            return Err(Error::NotSimplex(face_idx));
        }
        let k = face.vertices.len();
        let basis: Vec<Vec<i64>> = face.vertices.iter().map(|&j| self.vertices[j].as_i64()).collect();

        // Pick k coordinates on which the vertices are independent, then
        // q = adj·v / det on those coordinates.
        let (rows, det) = (0..self.n)
            .combinations(k)
            .find_map(|rows| {
                let sub: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&r| basis.iter().map(|b| b[r]).collect())
                    .collect();
                match det_i64(&sub) {
                    Some(0) | None => None,
                    Some(d) => Some((rows, d)),
                }
            })
            .ok_or(Error::NotSimplex(face_idx))?;
        let sub: Vec<Vec<i64>> = rows
            .iter()
            .map(|&r| basis.iter().map(|b| b[r]).collect())
            .collect();
        let inv = inverse(&to_rat(&sub)).expect("nonzero determinant");
        let det_abs = det.abs();
        let scale = Rat::from_integer(BigInt::from(det_abs));
        let adj: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * &scale).to_integer().to_i64().expect("adjugate entry fits"))
                    .collect()
            })
            .collect();

        let upper: Vec<u32> = (0..self.n)
            .map(|i| {
                let s: u32 = face.vertices.iter().map(|&j| self.vertices[j].0[i]).sum();
                s.saturating_sub(1)
            })
            .collect();
        let points = par_collect(&upper, |v| {
            let t: Vec<i64> = adj
                .iter()
                .map(|row| row.iter().zip(&rows).map(|(a, &r)| a * i64::from(v[r])).sum())
                .collect();
            if t.iter().any(|&x| x < 0 || x >= det_abs) {
                return false;
            }
            (0..self.n).all(|i| {
                let recon: i64 = t.iter().zip(&basis).map(|(x, b)| x * b[i]).sum();
                recon == det_abs * i64::from(v[i])
            })
        });
        Ok(points
            .into_iter()
            .map(|v| {
                let t: Vec<i64> = adj
                    .iter()
                    .map(|row| row.iter().zip(&rows).map(|(a, &r)| a * i64::from(v[r])).sum())
                    .collect();
                let q: Vec<Rat> = t
                    .iter()
                    .map(|&x| Rat::new(BigInt::from(x), BigInt::from(det_abs)))
                    .collect();
                let nu = q.iter().fold(Rat::zero(), |acc, x| acc + x);
                BoxPoint {
                    v: ExpVec(v),
                    host_face: face_idx,
                    q,
                    nu,
                }
            })
            .collect())
    }

    /// `μ_P = n!·vol(P)`: each boundary facet is triangulated by pulling its
    /// first vertex and every simplex contributes `|det|` of its vertices.
    pub fn normalized_volume(&self) -> i64 {
        let facet_faces = self
            .faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.dim + 1 == self.n)
            .map(|(i, _)| i);
        facet_faces
            .flat_map(|i| self.triangulate(i))
            .map(|simplex| {
                let m: Vec<Vec<i64>> = simplex.iter().map(|&j| self.vertices[j].as_i64()).collect();
                det_i64(&m).expect("determinant fits").abs()
            })
            .sum()
    }

    /// Pulling triangulation of a face into vertex-index simplices.
    pub fn triangulate(&self, face_idx: usize) -> Vec<Vec<usize>> {
        let face = &self.faces[face_idx];
        if face.is_simplex {
            return vec![face.vertices.clone()];
        }
        let apex = face.vertices[0];
        let mut out = Vec::new();
        for (g, sub) in self.faces.iter().enumerate() {
            if sub.dim + 1 == face.dim
                && is_subset(&sub.vertices, &face.vertices)
                && sub.vertices.binary_search(&apex).is_err()
            {
                for mut s in self.triangulate(g) {
                    s.insert(0, apex);
                    out.push(s);
                }
            }
        }
        out
    }

    /// Upper corner of a box containing `ℓ·P`.
    pub fn dilation_box(&self, l: u32) -> Vec<u32> {
        vec![l * self.max_coord; self.n]
    }

    /// `L_P(ℓ) = #{v ∈ ℕⁿ : ν(v) ≤ ℓ}`.
    pub fn lattice_count(&self, l: u32) -> u64 {
        let bound = i64::from(l) * self.denom;
        let hist = par_histogram(&self.dilation_box(l), |v| {
            (self.scaled_value(v) <= bound).then_some(0)
        });
        hist.get(&0).copied().unwrap_or(0) as u64
    }

    /// Histogram of `D·ν(v)` over all `v ∈ ℕⁿ` with `ν(v) ≤ t`.
    pub fn scaled_value_histogram(&self, t: u32) -> std::collections::BTreeMap<i64, i64> {
        let bound = i64::from(t) * self.denom;
        par_histogram(&self.dilation_box(t), |v| {
            let s = self.scaled_value(v);
            (s <= bound).then_some(s)
        })
    }

    /// Every `v ∈ ℕⁿ` with `ν(v) ≤ bound`, sorted.
    pub fn points_with_value_at_most(&self, bound: &Rat) -> Vec<ExpVec> {
        let scaled_bound = (bound * Rat::from_integer(BigInt::from(self.denom)))
            .floor()
            .to_integer()
            .to_i64()
            .expect("bound fits");
        let l = bound.ceil().to_integer().to_u32().expect("bound fits").max(1);
        par_collect(&self.dilation_box(l), |v| self.scaled_value(v) <= scaled_bound)
            .into_iter()
            .map(ExpVec)
            .collect()
    }

    pub fn dump(&self) -> ModelDump {
        ModelDump {
            schema: 1,
            mode: self.mode,
            n: self.n,
            vertices: self.vertices.iter().map(|v| v.0.clone()).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| FacetDump {
                    u_f: f.normal.iter().map(format_rat).collect(),
                    vertices: f.vertices.clone(),
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| FaceDump {
                    vertices: f.vertices.clone(),
                    dim: f.dim,
                    in_f_of_p: !f.in_coordinate_hyperplane,
                    simplex: f.is_simplex,
                })
                .collect(),
            simplicial: self.is_simplicial(),
            normalized_volume: self.normalized_volume(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelDump {
    pub schema: u32,
    pub mode: Mode,
    pub n: usize,
    pub vertices: Vec<Vec<u32>>,
    pub facets: Vec<FacetDump>,
    pub faces: Vec<FaceDump>,
    pub simplicial: bool,
    pub normalized_volume: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetDump {
    #[serde(rename = "u_F")]
    pub u_f: Vec<String>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceDump {
    pub vertices: Vec<usize>,
    pub dim: usize,
    #[serde(rename = "in_F_of_P")]
    pub in_f_of_p: bool,
    pub simplex: bool,
}

fn dot(u: &[Rat], p: &ExpVec) -> Rat {
    u.iter()
        .zip(&p.0)
        .filter(|(_, &x)| x != 0)
        .fold(Rat::zero(), |acc, (a, &x)| acc + a * Rat::from_integer(BigInt::from(x)))
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Normalised forms of every supporting hyperplane through `n` linearly
/// independent support points that leaves all points on the correct side:
/// `≤ 1` globally, `≥ 1` with a strictly positive normal locally.
fn enumerate_facet_normals(mode: Mode, n: usize, points: &[ExpVec]) -> Vec<Vec<Rat>> {
    let ones = vec![Rat::one(); n];
    let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for combo in points.iter().combinations(n) {
        let a: Vec<Vec<Rat>> = combo
            .iter()
            .map(|p| p.0.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
            .collect();
        let Some(u) = solve(&a, &ones) else { continue };
        if found.contains(&u) {
            continue;
        }
        let valid = match mode {
            Mode::Global => points.iter().all(|p| dot(&u, p) <= Rat::one()),
            Mode::Local => {
                u.iter().all(|x| x.is_positive()) && points.iter().all(|p| dot(&u, p) >= Rat::one())
            }
        };
        if valid {
            found.insert(u);
        }
    }
    found.into_iter().collect()
}

/// Closure of the facet vertex sets under intersection with every facet of
/// the polytope, coordinate hyperplanes included.
fn enumerate_faces(n: usize, vertices: &[ExpVec], facets: &[FacetForm]) -> Vec<Face> {
    let mut generators: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    for i in 0..n {
        generators.push((0..vertices.len()).filter(|&j| vertices[j].0[i] == 0).collect());
    }
    let mut seen: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    let mut queue: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while let Some(face) = queue.pop() {
        for g in &generators {
            let meet: Vec<usize> = face.iter().copied().filter(|x| g.binary_search(x).is_ok()).collect();
            if !meet.is_empty() && seen.insert(meet.clone()) {
                queue.push(meet);
            }
        }
    }

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|vs| {
            let coords: Vec<Vec<i64>> = vs.iter().map(|&j| vertices[j].as_i64()).collect();
            // No boundary face contains the origin, so affine dimension is
            // linear rank minus one.
            let dim = rank(&to_rat(&coords)) - 1;
            let in_coordinate_hyperplane = (0..n).any(|i| vs.iter().all(|&j| vertices[j].0[i] == 0));
            let containing = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| is_subset(&vs, &f.vertices))
                .map(|(k, _)| k)
                .collect();
            Face {
                is_simplex: vs.len() == dim + 1,
                vertices: vs,
                dim,
                in_coordinate_hyperplane,
                facets: containing,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    faces
}
