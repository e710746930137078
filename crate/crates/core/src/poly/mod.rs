//! Polynomials over Q: univariate arithmetic, sparse multivariate
//! polynomials and Groebner bases.

pub mod groebner;
pub mod multivariate;
pub mod univariate;

pub use multivariate::{MPoly, MonomialOrder};
pub use univariate::UPoly;
