//! Exact tensor calculus for Jacobi, Poisson and Nijenhuis structures on a
//! coordinate chart of R^n.

pub mod error;
pub mod num;
pub mod scalar;
pub mod jacobi;
pub mod tensor;

pub use error::{Error, Result};

/// Arbitrary-precision rationals, the default coefficient field.
pub type Rational = num_rational::BigRational;
pub type Scalar = scalar::ScalarField<Rational>;
pub type Multivector = tensor::MultivectorField<Rational>;
pub type Form = tensor::DifferentialForm<Rational>;
pub type Endomorphism = tensor::EndomorphismField<Rational>;
pub type Jacobi = jacobi::JacobiPair<Rational>;
