//! Affine Grassmann codes `C^A(ell, m; r)` over small finite fields.
//!
//! The crate builds generator matrices by evaluating minors of a generic
//! `ell x ell'` matrix at every point of `F_q^{ell x ell'}`, constructs an
//! explicit basis of the dual code from forbidden monomials and minor
//! binomials, and provides exact weight analysis, automorphism checks and
//! sparse parity-check export.

pub mod analysis;
pub mod cli;
pub mod code;
pub mod dual;
pub mod error;
pub mod export;
pub mod field;
pub mod linalg;
pub mod minors;
pub mod monomial;
pub mod transforms;

pub use error::{AgcError, Result};
pub use field::{Elem, FieldSpec};
