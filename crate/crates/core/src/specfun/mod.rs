//! Special functions: gamma, Gauss and Appell hypergeometric functions,
//! elliptic integrals, Jacobi elliptic and theta functions.
//!
//! All routines are generic over [`Real`](crate::Real); the error targets
//! quoted in the individual docs refer to `f64`.

mod appell;
mod elliptic;
mod gamma;
mod hyper;
mod theta;

pub use appell::{appell_f1, appell_f1_dy, appell_f1_quadrature};
pub use elliptic::{
    carlson_rd, carlson_rf, elliptic_complete, elliptic_incomplete, jacobi_am, jacobi_suite,
    JacobiSuite,
};
pub use gamma::{gamma, ln_gamma, poch, poch_over_factorial, rgamma, sin_pi};
pub use hyper::{gauss_2f1, hyp2f1, hyp2f1_regularized};
pub use theta::{nome, theta_nome, theta_q};
