//! Exact computation of toric Newton spectra and related invariants of
//! convenient polynomials: spectra at infinity, local singularity spectra,
//! Milnor numbers, graded quotient rings, Hodge-Deligne polynomials,
//! orbifold cohomology dimensions and Ehrhart δ-vectors.

pub mod checks;
pub mod ehrhart;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod numerics;
pub mod orbifold;
pub mod poly;
pub mod polytope;
pub mod spectrum;

mod lattice;

pub use error::{Error, Result};
pub use numerics::{Rat, SpectrumSeries};
pub use poly::{parse_polynomial, ExpVec, Mode, Poly};
pub use polytope::{BoxPoint, Cone, Face, FacetForm, PolytopeModel};
pub use spectrum::{milnor_number, spectrum_at_infinity, toric_spectrum, Route};
