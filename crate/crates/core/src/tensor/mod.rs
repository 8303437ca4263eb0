//! Multivector fields, differential forms, (1,1)-tensors and their brackets.

mod alternating;
mod calculus;
mod endomorphism;
pub mod index;

pub use alternating::{pair, Alternating, DifferentialForm, Down, MultivectorField, Up, Variance};
pub use calculus::{
    apply_vector, differential, exterior_derivative, interior_product, lie_bracket, lie_derivative,
    schouten_bracket, LieDerivative,
};
pub use endomorphism::{bivector_matrix, EndomorphismField};
