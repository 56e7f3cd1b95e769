//! Exact construction and verification engine for Al-Salam–Carlitz I
//! polynomials and their higher-order Sobolev-type extensions.
//!
//! Everything exact lives in ℚ(Z), the rational functions in one formal
//! generator `Z` standing for `(q, a, q/a; q)∞`. Identities are checked by
//! reducing residuals to canonical form, so "holds" means "is zero", not
//! "is small".

pub mod asc;
pub mod closed_forms;
pub mod error;
pub mod export;
pub mod fault;
pub mod jfrac;
pub mod ladder;
mod memo;
pub mod qcore;
pub mod qpoly;
pub mod report;
pub mod scalar;
pub mod sobolev;
pub mod suite;

pub use error::{Error, Result};
pub use qcore::QContext;
pub use qpoly::{BiPoly, Ell, Poly, QOps, RatFun};
pub use scalar::{Backend, ExactField, Field, Real, Scalar, ZField, ZRat};
