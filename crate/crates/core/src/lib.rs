//! Exact computations with finite-dimensional Leibniz algebras given by
//! structure constants.
//!
//! The crate covers the whole pipeline needed to study second cohomology
//! with adjoint coefficients: exact sparse linear algebra ([`linalg`]),
//! algebras and bimodules with identity checkers ([`algebra`]), the
//! `sl2 + V_m` family and a text file format ([`catalog`]), Leibniz cochain
//! complexes ([`cochain`]), graded cohomology and block analyses
//! ([`cohomology`]), derivation algebras ([`derivations`]) and the claim
//! ledger behind `leibniz verify-paper` ([`verify`]).

pub mod algebra;
pub mod catalog;
pub mod cochain;
pub mod cohomology;
pub mod derivations;
pub mod error;
pub mod linalg;
pub mod verify;

pub use algebra::{AlgebraStructure, Bimodule, Grading, IdentityKind, IdentityViolation};
pub use error::{AlgebraError, CohomologyError, DerivationError, FormatError, LinalgError};
pub use linalg::{Rational, SparseRationalMatrix, SparseVector, Subspace};
