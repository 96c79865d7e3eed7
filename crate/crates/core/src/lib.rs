//! Diagonal spin-spin correlations of the square-lattice Ising model and
//! their lambda-extended form-factor expansion, computed along independent
//! routes that can be checked against each other:
//!
//! * [`formfactor`]: direct multiple integrals over `(0,1)`;
//! * [`fredholm_cont`]: Fredholm determinants of Appell-function kernels;
//! * [`scattering`]: the discrete kernel `G` and Marchenko solutions;
//! * [`toeplitz_bops`]: Toeplitz determinants and bi-orthogonal polynomials;
//! * [`elliptic_exact`]: closed forms in Jacobi elliptic and theta functions;
//! * [`painleve`]: the Painleve VI sigma-form residual.
//!
//! The foundational layer ([`specfun`], [`quad`], [`linalg`]) is generic over
//! [`Real`]; the correlation routes work in `f64`, where their tolerances
//! are pinned.

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod elliptic_exact;
pub mod error;
pub mod formfactor;
pub mod fredholm_cont;
pub mod linalg;
pub mod painleve;
pub mod point;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod scattering;
pub mod specfun;
pub mod toeplitz_bops;

pub use error::{Error, Result};
pub use point::{ModelPoint, Phase};
pub use scalar::Real;

/// `f64` Gauss-Jacobi or circle rule.
pub type QuadRule = quad::QuadRule<f64>;
/// `f64` moment table.
pub type MomentTable = quad::MomentTable<f64>;
/// `f64` dense matrix.
pub type Matrix = linalg::Matrix<f64>;
/// `f64` Jacobi elliptic values.
pub type JacobiSuite = specfun::JacobiSuite<f64>;
