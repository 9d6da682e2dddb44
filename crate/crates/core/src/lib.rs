//! Symplectic classification of generic immersed plane curves.
//!
//! The labelled invariant of a generic immersion is its vector of bounded
//! face areas; two curves in the same isotopy class are equivalent under
//! area-preserving diffeomorphisms exactly when those vectors agree up to the
//! face permutations induced by the curve's orientation-preserving
//! symmetries. This crate computes all of it from sampled polylines:
//!
//! - [`curve`]: sampled closed curves, resampling, genericity certificate.
//! - [`arrangement`]: planar subdivision, canonical face labels, face areas
//!   and face integrals of densities.
//! - [`diagram`]: Gauss codes, canonical diagram codes, isotopy matching and
//!   the symmetry group acting on faces.
//! - [`forms`]: area forms on a grid, pullbacks, the primitive
//!   diffeomorphism, bump realization of area vectors and Moser flows.
//! - [`moduli`]: equivalence decisions and moduli dimension counts.
//! - [`analysis`]: the whole pipeline in one call; [`shapes`]: standard curves.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod arrangement;
pub mod curve;
pub mod diagram;
mod error;
pub mod forms;
pub mod geom;
pub mod moduli;
pub mod ode;
pub mod perm;
pub mod shapes;

pub use analysis::{analyze, AnalysisOptions, AnalyzedCurve};
pub use arrangement::{
    build_arrangement, face_areas, integrate_density_over_faces, AreaVector, Arrangement,
};
pub use curve::{check_generic, resample, ClosedCurve, GenericityOptions, GenericityReport};
pub use diagram::{
    canonical_code, gauss_code, isotopy_match, symmetry_group, GaussCode, SymmetryGroup,
};
pub use error::{Error, Result};
pub use forms::{
    moser_interpolation, primitive_diffeo, pullback, realize_area_vector, Density, Grid, PlanarMap,
};
pub use geom::{Point, Rect};
pub use moduli::{
    labelled_equivalent, moduli_dimension, symplectically_equivalent, CurveSpec, Decision, Verdict,
};
pub use perm::Perm;
