//! Exact rational toolkit for higher-codimensional alpha invariants of
//! Fano varieties.
//!
//! - [`exact_math`]: rationals, binomials, univariate polynomials.
//! - [`ci_model`]: blow-up of a complete intersection and its volume
//!   polynomial.
//! - [`beta`]: β-invariants from volume profiles and the lower bound
//!   `α^(k) >= k/(n+1)`.
//! - [`monomial`]: Newton polyhedra, log canonical thresholds and
//!   multiplicities of monomial ideals.
//! - [`stability`]: K-stability criteria as exact predicates with traces.
//! - [`catalog`]: worked example geometries, validated on load.
//! - [`cli`]: the `codim-alpha` command-line frontend.

pub mod beta;
pub mod catalog;
pub mod ci_model;
pub mod cli;
pub mod error;
pub mod exact_math;
pub mod monomial;
pub mod stability;

pub use error::{Error, Result};
pub use exact_math::{Polynomial, Rational, Relation};
