//! Exact-arithmetic toolkit for homological perturbation machinery on
//! finite chain complexes, together with a symbolic realization of the
//! free differential graded algebras the operator identities live in.
//!
//! Everything computes over arbitrary-precision rationals; every check in
//! the crate is an exact equality, never a tolerance.

pub mod complex;
pub mod error;
pub mod freealg;
pub mod graded;
pub mod hatseries;
pub mod homology;
pub mod instances;
pub mod json;
pub mod linalg;
pub mod perturb;
pub mod registry;
pub mod report;
pub mod scalar;
pub mod structures;
pub mod transfer;

pub use error::CoreError;
pub use report::{CheckLine, Report};
pub use scalar::Scalar;
