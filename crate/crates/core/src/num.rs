//! Coefficient fields.
//!
//! Every scalar field is built over an exact ordered field of coefficients.
//! The default is [`num_rational::BigRational`]; fixed-width rationals such as
//! `Ratio<i128>` also satisfy the bound and are handy for small fixtures, but
//! overflow on long bracket expansions.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact coefficient field.
pub trait Coeff:
    Num + Signed + Clone + Ord + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the coefficient type")
    }

    /// Parses an unsigned decimal literal.
    fn from_decimal(digits: &str) -> Option<Self> {
        if digits.is_empty() {
            return None;
        }
        let ten = Self::from_int(10);
        digits.chars().try_fold(Self::zero(), |acc, ch| {
            let d = ch.to_digit(10)?;
            Some(acc * ten.clone() + Self::from_int(d as i64))
        })
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Coeff for T where
    T: Num + Signed + Clone + Ord + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    #[test]
    fn big_and_fixed_width_rationals_are_coefficients() {
        fn third<C: Coeff>() -> C {
            C::one() / C::from_int(3)
        }
        assert_eq!(third::<BigRational>().to_string(), "1/3");
        assert_eq!(third::<Ratio<i128>>().to_string(), "1/3");
        assert!((third::<BigRational>().approx() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(BigRational::from_decimal("12"), Some(BigRational::from_int(12)));
        assert_eq!(BigRational::from_decimal("x"), None);
    }
}
