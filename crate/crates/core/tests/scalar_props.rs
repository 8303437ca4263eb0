use std::sync::Arc;

use jacobikit::jacobi::random::InstanceGenerator;
use jacobikit::scalar::{parse_scalar, Chart, ScalarField};
use jacobikit::Rational;
use proptest::prelude::*;

type S = ScalarField<Rational>;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

fn exp_factor(g: &mut InstanceGenerator, c: &Arc<Chart>) -> S {
    let freq = (0..c.dim()).map(|_| Rational::new(g.int(-2, 2).into(), g.int(1, 2).into())).collect();
    S::exp_linear(c, freq)
}

/// `p·exp(c·x) / q` with a nonzero polynomial `q`.
fn scalar(g: &mut InstanceGenerator, c: &Arc<Chart>) -> S {
    let num = &g.polynomial::<Rational>(c) * &exp_factor(g, c);
    let mut den = g.polynomial::<Rational>(c);
    if den.is_zero() {
        den = S::int(c, g.int(1, 3));
    }
    if g.coin(0.5) {
        num
    } else {
        &num / &den
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let (a, b, d) = (scalar(&mut g, &c), scalar(&mut g, &c), scalar(&mut g, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &d, &a + &(&b + &d));
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &S::zero(&c), a.clone());
        prop_assert_eq!(&a * &S::one(&c), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert!((&b * &b.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn no_zero_divisors(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let (a, b) = (scalar(&mut g, &c), scalar(&mut g, &c));
        prop_assert_eq!((&a * &b).is_zero(), a.is_zero() || b.is_zero());
    }

    #[test]
    fn partials_commute(seed in any::<u64>(), n in 1usize..=3, i in 0usize..3, j in 0usize..3) {
        let (i, j) = (i % n, j % n);
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let a = scalar(&mut g, &c);
        let dij = a.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
        let dji = a.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
        prop_assert_eq!(dij, dji);
    }

    #[test]
    fn derivative_rules(seed in any::<u64>(), n in 1usize..=3, i in 0usize..3) {
        let i = i % n;
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let (a, b) = (scalar(&mut g, &c), scalar(&mut g, &c));
        let da = a.partial_derivative(i).unwrap();
        let db = b.partial_derivative(i).unwrap();
        prop_assert_eq!((&a * &b).partial_derivative(i).unwrap(), &(&da * &b) + &(&a * &db));
        if !b.is_zero() {
            let quotient = &(&(&da * &b) - &(&a * &db)) / &(&b * &b);
            prop_assert_eq!((&a / &b).partial_derivative(i).unwrap(), quotient);
        }
    }

    #[test]
    fn print_parse_roundtrip(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let a = scalar(&mut g, &c);
        let text = a.to_string();
        let back: S = parse_scalar(&text, &c).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }
}
