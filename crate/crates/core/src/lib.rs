//! Exact analysis of Delsarte surfaces and their standard fibrations.
//!
//! A Delsarte surface is a surface in projective 3-space cut out by a sum of
//! four monomials. This crate reduces the standard fibration
//! `(X0:X1:X2:X3) -> (X2:X3)` of such a surface to a minimal form
//! `m1 + m2 + m3 + t*m4`, locates its singular fibers, classifies the
//! structure of the fibration, runs the genus-one Weierstrass/Kodaira pipeline
//! and computes Lefschetz and Picard numbers by enumerating characters in
//! `(Q/Z)^4`.
//!
//! Everything is computed exactly over the rationals; no floating point is
//! involved anywhere.
//!
//! ```
//! use delsarte_core::model::DelsarteSurface;
//! use delsarte_core::reduction::reduce_to_minimal;
//! use delsarte_core::locus::singular_locus;
//!
//! // y^2 + x^3 + x^2 + t, columns are (x, y, t, w)
//! let s = DelsarteSurface::from_rows([[0, 2, 0, 1], [3, 0, 0, 0], [2, 0, 0, 1], [0, 0, 1, 2]]).unwrap();
//! let red = reduce_to_minimal(&s).unwrap();
//! let locus = singular_locus(&red.fibration);
//! assert_eq!(locus.constant_string(), "-4/27");
//! ```

pub mod elliptic;
pub mod error;
pub mod locus;
pub mod matrix;
pub mod model;
pub mod newton;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod rational;
pub mod reduction;
pub mod shioda;

pub use error::{Error, Result};
pub use matrix::{ExactMatrix, IntegerVector};
pub use model::{AffineEquation, BaseChangeSpec, DelsarteSurface, Monomial2, Monomial3};
pub use rational::{frac_part, QmodZ, Rational};
pub use reduction::MinimalFibration;
