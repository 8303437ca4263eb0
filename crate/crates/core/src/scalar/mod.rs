//! The coefficient field: exact fractions of exponential polynomials.

mod chart;
mod exppoly;
mod field;
mod parse;

pub use chart::{chart, Chart};
pub use exppoly::{ExpPoly, Monomial};
pub use field::{sum, ScalarField};
pub use parse::{parse_scalar, ParseError};
