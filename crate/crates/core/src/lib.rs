//! Exact-arithmetic construction and verification of complex product
//! structures on the special linear family.
//!
//! A complex product structure on a real Lie algebra 𝔤 is a pair of
//! integrable operators (P, J) with P² = 1, J² = −1 and PJ = −JP; the product
//! Q = JP is then a second paracomplex structure and (P, Q, J) generate a
//! split-quaternion action on 𝔤. This crate builds the classical structures
//! carried by
//!
//! * sl(2m−1, ℝ),
//! * su(m, m−1), and
//! * sl(2m−1, ℂ) viewed as a real algebra,
//!
//! entirely over the rationals and Gaussian rationals, and verifies every
//! defining identity exactly: Nijenhuis integrability, eigenspace subalgebras,
//! the parametric family obtained by rebasing the abelian block, metric
//! signatures and compatibility with the Killing metric, the induced
//! hypercomplex structure on the realified complexification, subalgebra
//! embedding chains, and the Einstein property of the biinvariant metric.
//!
//! No floating point is used anywhere; a failed check always carries an exact
//! witness that can be re-evaluated independently.

#![forbid(unsafe_code)]

pub mod cps;
pub mod error;
pub mod fixture;
pub mod forms;
pub mod geometry;
pub mod lie;
pub mod mat;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use mat::Mat;
pub use scalar::{GaussRational, Rational, Scalar};

/// Square matrix over the Gaussian rationals: the carrier type for algebra
/// elements.
pub type MatN = Mat<GaussRational>;

/// Linear operator on basis coordinates (dim × dim, rational entries).
pub type EndoOp = Mat<Rational>;

/// Coordinate vector with respect to an algebra basis.
pub type Coord = Vec<Rational>;
