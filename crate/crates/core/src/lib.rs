//! Computable invariants behind ribbon rational-homology cobordism obstructions.
//!
//! The crate is organised bottom-up:
//!
//! * [`abelian`] exact arithmetic on finitely generated abelian groups,
//! * [`group`] finitely presented groups, words and SU(2) representations,
//! * [`seifert`] Seifert invariants, homology, presentations and the
//!   cover/pinch homomorphisms between Seifert fibered homology spheres,
//! * [`su2`] unit quaternions and the conjugacy-angle interval calculus,
//! * [`repvar`] rotation-number enumeration of SU(2) representation varieties,
//! * [`groupcoh`] Fox-calculus cohomology with adjoint coefficients,
//! * [`cobordism`] ribbon handle data and representation extension,
//! * [`geometry`] the Thurston-geometry hierarchy,
//! * [`obstruct`] the verdict engine combining all of the above.
//!
//! Exact parts use arbitrary-precision integers and rationals. The numerical
//! parts are generic over a [`Real`] scalar; the aliases below fix `f64`.

pub mod abelian;
pub mod cobordism;
pub mod error;
pub mod geometry;
pub mod group;
pub mod groupcoh;
pub mod obstruct;
pub mod repvar;
mod scalar;
pub mod seifert;
pub mod su2;
mod tolerance;

pub use error::{Error, Result};
pub use scalar::Real;
pub use tolerance::Tolerances;

/// Double-precision unit quaternion.
pub type Quaternion = su2::UnitQuaternion<f64>;
/// Double-precision conjugacy-angle interval.
pub type AngleInterval = su2::AngleInterval<f64>;
/// Double-precision adjoint matrix.
pub type AdMatrix = su2::AdMatrix<f64>;
/// Double-precision SU(2) representation.
pub type Representation = group::Representation<f64>;
/// Double-precision Fox-calculus cochain data.
pub type CochainData = groupcoh::CochainData<f64>;
