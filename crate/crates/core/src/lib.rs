//! Sharp diameter bounds for Neumann eigenvalues via weighted Sturm-Liouville
//! problems.
//!
//! The crate computes the relaxed eigenvalues `mu_k(h)` of the weighted
//! Rayleigh quotient `int u'^2 h / int u^2 h` over `[0, 1]` for nonnegative
//! weights `h`, builds the concave profiles that maximize `mu_k(h^alpha)`
//! together with the corresponding sharp constants (assembled from Bessel
//! zeros), optimizes profiles numerically against those analytic optima, and
//! verifies the collapsing-domain limit `D^2 mu_k(Omega_eps) -> mu_k(h)` with
//! a 2D triangular finite-element solver on ridge domains.

pub mod bessel;
pub mod bounds;
pub mod linalg;
pub mod optim;
pub mod profile;
pub mod sturm;
pub mod error;
pub mod fem2d;

pub use error::{Error, Result};
