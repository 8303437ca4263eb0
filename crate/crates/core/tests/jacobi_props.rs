mod common;

use common::*;
use jacobikit::jacobi::random::InstanceGenerator;
use jacobikit::jacobi::{
    algebroid_bracket, anchor, check_compatibility, check_theorem_rec, depoissonize, form_bracket, hierarchy,
    is_jacobi, is_jacobi_pencil, is_poisson, lcs_endomorphism, lcs_to_jacobi, poissonize, verify_identity,
    IdentityInputs, Status,
};
use jacobikit::tensor::{schouten_bracket, EndomorphismField};
use jacobikit::Error;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// A `J` with `JΛ` antisymmetric: `a·Id + LK` for a polynomial `a`.
fn compatible_shape(g: &mut InstanceGenerator, l: &Mv) -> End {
    let a: S = g.polynomial(l.chart());
    g.compatible_endomorphism(l).try_add(&EndomorphismField::scalar(&a)).unwrap()
}

fn assert_identity(name: &str, inputs: &IdentityInputs<jacobikit::Rational>) -> Result<(), TestCaseError> {
    let r = verify_identity(name, inputs).unwrap();
    prop_assert!(r.passed(), "{}", r);
    Ok(())
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn jacobi_bracket_satisfies_jacobi_identity(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let p: Pair = g.jacobi_pair(&c);
        prop_assert!(is_jacobi(&p).passed());
        let (f, h, k): (S, S, S) = (g.polynomial(&c), g.polynomial(&c), g.polynomial(&c));
        prop_assert!(jacobiator(&p, &f, &h, &k).is_zero());
    }

    #[test]
    fn poissonization_is_poisson_and_roundtrips(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let p: Pair = g.jacobi_pair(&c);
        let pi = poissonize(&p).unwrap();
        prop_assert!(is_poisson(&pi).passed());
        prop_assert_eq!(depoissonize(&pi, n).unwrap(), p);
    }

    #[test]
    fn calibration_identities(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let l: Mv = g.bivector(&c);
        let inputs = IdentityInputs {
            lambda: Some(l.clone()),
            e: Some(g.vector(&c)),
            alpha: Some(g.covector(&c)),
            beta: Some(g.covector(&c)),
            gamma: Some(g.covector(&c)),
            ..Default::default()
        };
        assert_identity("eq2", &inputs)?;
        assert_identity("eq4", &inputs)?;
        let f: S = g.polynomial(&c);
        let lf = schouten_bracket(&l, &Mv::scalar(f.clone())).unwrap();
        prop_assert_eq!(lf, sharp(&l, &grad(&f)).neg());
    }

    #[test]
    fn unconditional_identities(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let l: Mv = g.bivector(&c);
        let (j, pi) = g.compatible_family(&l);
        let inputs = IdentityInputs {
            lambda: Some(l.clone()),
            pi: Some(pi),
            e: Some(g.vector(&c)),
            j: Some(j),
            x: Some(g.vector(&c)),
            alpha: Some(g.covector(&c)),
            beta: Some(g.covector(&c)),
            gamma: Some(g.covector(&c)),
            ..Default::default()
        };
        assert_identity("eq5", &inputs)?;
        assert_identity("eq8", &inputs)?;
        assert_identity("lemma_vec", &inputs)?;
    }

    #[test]
    fn lemma_nij_small_k(seed in any::<u64>(), n in 2usize..=4, k in 1u32..=2) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        g.max_degree = 1;
        let inputs = IdentityInputs {
            j: Some(g.endomorphism(&c)),
            x: Some(g.vector(&c)),
            y: Some(g.vector(&c)),
            k: Some(k),
            ..Default::default()
        };
        assert_identity("lemma_nij", &inputs)?;
    }

    #[test]
    fn form_bracket_leibniz(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let l: Mv = g.bivector(&c);
        let (a, b): (Fm, Fm) = (g.form(&c), g.form(&c));
        let f: S = g.polynomial(&c);
        let lhs = form_bracket(&l, &a, &b.scale(&f).unwrap()).unwrap();
        let rhs = form_bracket(&l, &a, &b).unwrap().scale(&f).unwrap().try_add(&b.scale(&deriv(&sharp(&l, &a), &f)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn anchor_is_a_homomorphism(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let p: Pair = g.jacobi_pair(&c);
        let sections = basis_sections(&c);
        for (i, s1) in sections.iter().enumerate() {
            for s2 in &sections[i + 1..] {
                let br = algebroid_bracket(&p, s1, s2).unwrap();
                let (form, func) = algebroid_oracle(p.lambda(), p.e(), s1, s2);
                prop_assert_eq!(&br.alpha, &form);
                prop_assert_eq!(&br.f, &func);
                let lhs = anchor(&p, &br).unwrap();
                let rhs = lie_vec(&anchor_oracle(p.lambda(), p.e(), s1), &anchor_oracle(p.lambda(), p.e(), s2));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn theorem_rec_agrees_with_is_jacobi(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(n);
        let p: Pair = g.jacobi_pair(&c);
        let j = if g.coin(0.5) {
            EndomorphismField::scalar(&g.polynomial(&c))
        } else {
            compatible_shape(&mut g, p.lambda())
        };
        match check_theorem_rec(&p, &j) {
            Ok(r) => {
                prop_assert_ne!(r.status, Status::Error, "{}", r);
                let both = r.clause_passed("(a)").unwrap() && r.clause_passed("(b)").unwrap();
                let direct = is_jacobi(&jacobikit::jacobi::JacobiPair::new(
                    j.compose_bivector(p.lambda()).unwrap(),
                    j.apply(p.e()).unwrap(),
                ).unwrap()).passed();
                prop_assert_eq!(both, direct);
            }
            Err(Error::HypothesisViolated(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }
}

proptest! {
    #![proptest_config(config(6))]

    #[test]
    fn hierarchy_members_are_pairwise_pencils(seed in any::<u64>(), lcs in any::<bool>()) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(4);
        let (p, j) = if lcs {
            let (f1, w) = g.lcs::<jacobikit::Rational>(&c);
            let freq: Vec<_> = w.as_slice().iter().map(|x| -x.as_constant().unwrap()).collect();
            let f0b: Fm = InstanceGenerator::from_matrix(&c, &g.nondegenerate(&c));
            let f2 = f0b.scale(&S::exp_linear(&c, freq)).unwrap();
            (lcs_to_jacobi(&f1, &w).unwrap(), lcs_endomorphism(&f1, &f2).unwrap())
        } else {
            let l: Mv = InstanceGenerator::from_matrix(&c, &g.antisymmetric(&c));
            let j = g.compatible_endomorphism(&l);
            (jacobikit::jacobi::JacobiPair::poisson(l).unwrap(), j)
        };
        prop_assert!(check_compatibility(&p, &j, 3).passed());
        let members = hierarchy(&p, &j, 3).unwrap();
        prop_assert_eq!(members.len(), 4);
        for (i, a) in members.iter().enumerate() {
            prop_assert!(is_jacobi(a).passed());
            for b in &members[i + 1..] {
                let r = is_jacobi_pencil(a, b).unwrap();
                prop_assert_eq!(r.status, Status::Pass, "{}", r);
            }
        }
    }

    #[test]
    fn lcs_pencil_expansions(seed in any::<u64>()) {
        let mut g = InstanceGenerator::new(seed);
        let c = InstanceGenerator::chart(4);
        let (f1, w) = g.lcs::<jacobikit::Rational>(&c);
        let ell_freq: Vec<_> = w.as_slice().iter().map(|x| -x.as_constant().unwrap()).collect();
        let e_ell = S::exp_linear(&c, ell_freq.clone());
        let f0b: Fm = InstanceGenerator::from_matrix(&c, &g.nondegenerate(&c));
        let f2 = f0b.scale(&e_ell).unwrap();
        let (p1, p2) = (lcs_to_jacobi(&f1, &w).unwrap(), lcs_to_jacobi(&f2, &w).unwrap());
        // f = −ℓ, so e^{−f} = e^ℓ and πᵢ = e^{−f}Λᵢ.
        let e_f = S::exp_linear(&c, ell_freq.iter().map(|x| -x).collect());
        let (l1, l2, e1, e2) = (p1.lambda(), p2.lambda(), p1.e(), p2.e());
        let pi1 = l1.scale(&e_ell).unwrap();
        let pi2 = l2.scale(&e_ell).unwrap();
        let bracket = schouten_bracket(&pi1, &pi2).unwrap();
        let defect = schouten_bracket(l1, l2).unwrap()
            .try_sub(&e1.wedge(l2).unwrap()).unwrap()
            .try_sub(&e2.wedge(l1).unwrap()).unwrap();
        prop_assert_eq!(&bracket, &defect.scale(&(&e_ell * &e_ell)).unwrap());
        let lhs = schouten_bracket(&bracket, &Mv::scalar(e_f.clone())).unwrap();
        let rhs = schouten_bracket(e2, l1).unwrap().try_add(&schouten_bracket(e1, l2).unwrap()).unwrap().scale(&-&e_ell).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
