//! Exact computations in the enveloping algebra of `so(N, C)`: Pfaffian
//! central elements, their eigenvalues on irreducible representations, and
//! the spectral Radon transform between compact Grassmannian quotients.

pub mod enveloping;
pub mod error;
pub mod hc_eigen;
pub mod liealg;
pub mod linalg;
pub mod radon;
pub mod repmod;
pub mod scalar;
pub mod verify;


pub use error::{Error, Result};

pub use enveloping::{Monomial, UElement};
pub use hc_eigen::Weight;
pub use repmod::Irrep;
pub use liealg::{AdaptedBasis, LieElement};

pub use scalar::{GaussianRational, Rational};
