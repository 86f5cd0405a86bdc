//! Exact computations for the relative Lie algebra cohomology of so(n,1) with coefficients in the
//! polynomial Fock model.
//!
//! The crate is generic over exact scalar types (see [`scalar`]); the aliases below fix the
//! rational instantiation used throughout the command line tool.

pub mod error;
pub mod scalar;
pub mod linalg;
pub mod poly;
pub mod exterior;
pub mod fock;
pub mod koszul;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::{rat, ExactScalar, Field, Scalar};

pub type Rational = num_rational::BigRational;
pub type QMatrix = linalg::SparseMatrix<Rational>;
pub type QPolynomial = poly::Polynomial<Rational>;
pub type QCochain = fock::Cochain<Rational>;
