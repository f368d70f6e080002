//! Exact polynomial algebra for maximum likelihood estimation on projective
//! varieties and their duals.

pub mod error;
pub mod ideal;
pub mod likelihood;
pub mod poly;
pub mod solver;
pub mod variety;
pub mod zoo;

pub use error::{Error, ResourceKind, Result};
pub use ideal::{Budget, Field, GroebnerBasis, Ideal, QuotientBasis, SaturationMode};
pub use poly::{MonomialOrder, Monomial, Polynomial, VariableSet};
