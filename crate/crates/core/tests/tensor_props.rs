use jacobikit::jacobi::random::InstanceGenerator;
use jacobikit::scalar::ScalarField;
use jacobikit::tensor::{
    differential, exterior_derivative, lie_derivative, schouten_bracket, Alternating, DifferentialForm,
    EndomorphismField, MultivectorField, Up,
};
use jacobikit::Rational;
use proptest::prelude::*;

type S = ScalarField<Rational>;
type Mv = MultivectorField<Rational>;
type Fm = DifferentialForm<Rational>;

fn sign(k: usize) -> Rational {
    Rational::from_integer(if k % 2 == 0 { 1.into() } else { (-1).into() })
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        for p in 0..=n - 2 {
            let w: Fm = g.alternating(&c, p);
            prop_assert!(exterior_derivative(&exterior_derivative(&w)).is_zero());
        }
    }

    #[test]
    fn cartan_matches_component_formula(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let x: Mv = g.vector(&c);
        let xs = x.as_slice();
        let w1: Fm = g.form(&c);
        let expected: Vec<S> = (0..n)
            .map(|i| {
                let mut acc = S::zero(&c);
                for k in 0..n {
                    acc = &acc + &(&xs[k] * &w1.as_slice()[i].partial_derivative(k).unwrap());
                    acc = &acc + &(&w1.as_slice()[k] * &xs[k].partial_derivative(i).unwrap());
                }
                acc
            })
            .collect();
        prop_assert_eq!(lie_derivative(&x, &w1).unwrap(), Fm::from_vec(&c, expected).unwrap());

        let w2: Fm = g.alternating(&c, 2);
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut acc = S::zero(&c);
                for k in 0..n {
                    acc = &acc + &(&xs[k] * &w2.component(&[i, j]).partial_derivative(k).unwrap());
                    acc = &acc + &(&w2.component(&[k, j]) * &xs[k].partial_derivative(i).unwrap());
                    acc = &acc + &(&w2.component(&[i, k]) * &xs[k].partial_derivative(j).unwrap());
                }
                entries.push((vec![i, j], acc));
            }
        }
        prop_assert_eq!(lie_derivative(&x, &w2).unwrap(), Fm::from_components(&c, 2, entries).unwrap());
    }

    #[test]
    fn schouten_graded_symmetry(seed in any::<u64>(), n in 2usize..=4, p in 0usize..=2, q in 0usize..=2) {
        prop_assume!(p + q > 0);
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let a: Mv = g.alternating(&c, p);
        let b: Mv = g.alternating(&c, q);
        let ab = schouten_bracket(&a, &b).unwrap();
        let ba = schouten_bracket(&b, &a).unwrap();
        let s = sign((p + 1) * (q + 1) + 1);
        prop_assert_eq!(ab, ba.scale_const(&s));
    }

    #[test]
    fn schouten_graded_jacobi(seed in any::<u64>(), n in 2usize..=4, p in 0usize..=2, q in 0usize..=2, r in 0usize..=2) {
        prop_assume!(p + q > 0 && q + r > 0 && p + r > 0 && p + q + r > 1);
        let mut g = InstanceGenerator::new(seed);
        g.max_degree = 1 + (seed % 2) as u32;
        let c = InstanceGenerator::chart(n);
        let a: Mv = g.alternating(&c, p);
        let b: Mv = g.alternating(&c, q);
        let cc: Mv = g.alternating(&c, r);
        let br = |x: &Mv, y: &Mv| schouten_bracket(x, y).unwrap();
        let lhs = br(&a, &br(&b, &cc));
        let rhs = br(&br(&a, &b), &cc).try_add(&br(&b, &br(&a, &cc)).scale_const(&sign((p + 1) * (q + 1)))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_leibniz(seed in any::<u64>(), n in 2usize..=4, p in 1usize..=2, q in 0usize..=2, r in 0usize..=2) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let a: Mv = g.alternating(&c, p);
        let b: Mv = g.alternating(&c, q);
        let cc: Mv = g.alternating(&c, r);
        let lhs = schouten_bracket(&a, &b.wedge(&cc).unwrap()).unwrap();
        let t1 = schouten_bracket(&a, &b).unwrap().wedge(&cc).unwrap();
        let t2 = b.wedge(&schouten_bracket(&a, &cc).unwrap()).unwrap().scale_const(&sign((p + 1) * q));
        prop_assert_eq!(lhs, t1.try_add(&t2).unwrap(), "p={} q={} r={}", p, q, r);
    }

    #[test]
    fn bracket_with_function_is_minus_contraction(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let l: Mv = g.bivector(&c);
        let f: S = g.polynomial(&c);
        let lf = schouten_bracket(&l, &Alternating::<Rational, Up>::scalar(f.clone())).unwrap();
        prop_assert_eq!(lf, l.contract(&differential(&f)).unwrap().neg());
    }

    #[test]
    fn torsion_is_tensorial(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        g.max_degree = 1;
        let c = InstanceGenerator::chart(n);
        let j: EndomorphismField<Rational> = g.endomorphism(&c);
        let (x, y): (Mv, Mv) = (g.vector(&c), g.vector(&c));
        let (f, h): (S, S) = (g.polynomial(&c), g.polynomial(&c));
        let lhs = j.nijenhuis_torsion(&x.scale(&f).unwrap(), &y.scale(&h).unwrap()).unwrap();
        let rhs = j.nijenhuis_torsion(&x, &y).unwrap().scale(&(&f * &h)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
