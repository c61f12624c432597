//! Exact construction and verification of dual polynomials that certify
//! approximate-degree lower bounds for symmetric Boolean functions.
//!
//! Every scalar is an exact rational ([`Rat`]). The main entry points are
//! [`dual_or::make_certificate`] for the explicit OR witness,
//! [`lp_degree::min_eps_for_degree`] and [`lp_degree::approx_degree`] for
//! LP-based degrees, and [`lp_degree::verify_certificate`] for checking any
//! dual witness.

pub mod cli;
pub mod document;
pub mod dual_or;
pub mod error;
pub mod lp_degree;
pub mod numeric;
pub mod simplex;
pub mod sympoly;
pub mod threshold;

pub use document::Document;
pub use error::{Error, Result};
pub use numeric::{binomial, factorial, Rat};
pub use sympoly::{MultilinearPoly, SinglePoly, SymBoolFn, BRUTE_FORCE_LIMIT};
