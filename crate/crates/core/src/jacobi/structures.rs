use std::sync::Arc;

use super::{run_check, CheckReport, JacobiPair};
use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::scalar::{Chart, ScalarField};
use crate::tensor::{
    apply_vector, differential, exterior_derivative, schouten_bracket, DifferentialForm, EndomorphismField,
    MultivectorField,
};

/// `[π,π] = 0`.
pub fn is_poisson<C: Coeff>(pi: &MultivectorField<C>) -> CheckReport {
    run_check("is_poisson", |r| {
        let b = schouten_bracket(pi, pi)?;
        r.clause("[π,π] = 0", b.residuals("[π,π]"));
        Ok(())
    })
}

/// `[E,Λ] = 0` and `[Λ,Λ] = 2E∧Λ`.
pub fn is_jacobi<C: Coeff>(p: &JacobiPair<C>) -> CheckReport {
    run_check("is_jacobi", |r| {
        let (l, e) = (p.lambda(), p.e());
        let el = schouten_bracket(e, l)?;
        r.clause("[E,Λ] = 0", el.residuals("[E,Λ]"));
        let ll = schouten_bracket(l, l)?;
        let rhs = e.wedge(l)?.scale_const(&C::from_int(2));
        r.clause("[Λ,Λ] = 2E∧Λ", ll.try_sub(&rhs)?.residuals("[Λ,Λ] − 2E∧Λ"));
        Ok(())
    })
}

/// `{f,g} = Λ(df,dg) + f·E(g) − g·E(f)`.
pub fn jacobi_bracket<C: Coeff>(p: &JacobiPair<C>, f: &ScalarField<C>, g: &ScalarField<C>) -> Result<ScalarField<C>> {
    let (df, dg) = (differential(f), differential(g));
    let lfg = p.lambda().evaluate(&[&df, &dg])?;
    let eg = apply_vector(p.e(), g)?;
    let ef = apply_vector(p.e(), f)?;
    Ok(&(&lfg + &(f * &eg)) - &(g * &ef))
}

/// `e^{−t}(Λ + ∂t∧E)` on the chart extended by `t`.
pub fn poissonize<C: Coeff>(p: &JacobiPair<C>) -> Result<MultivectorField<C>> {
    poissonize_with(p, "t")
}

/// [`poissonize`] with a caller-chosen name for the new coordinate.
pub fn poissonize_with<C: Coeff>(p: &JacobiPair<C>, t: &str) -> Result<MultivectorField<C>> {
    let ext = p.chart().extended(t)?;
    let n = p.chart().dim();
    let lambda = p.lambda().lift(&ext)?;
    let e = p.e().lift(&ext)?;
    let dt = MultivectorField::basis(&ext, &[n])?;
    let mut freq = vec![C::zero(); n + 1];
    freq[n] = -C::one();
    let factor = ScalarField::exp_linear(&ext, freq);
    lambda.try_add(&dt.wedge(&e)?)?.scale(&factor)
}

/// Inverse of [`poissonize`] for the coordinate `t_index`: requires
/// `∂ₜ(e^t π) = 0` and reads `Λ` and `E` off `e^t π`.
pub fn depoissonize<C: Coeff>(pi: &MultivectorField<C>, t_index: usize) -> Result<JacobiPair<C>> {
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: pi.degree() });
    }
    let chart = pi.chart();
    chart.check_index(t_index)?;
    let mut freq = vec![C::zero(); chart.dim()];
    freq[t_index] = C::one();
    let sigma = pi.scale(&ScalarField::exp_linear(chart, freq))?;
    if !sigma.partial(t_index).is_zero() {
        return Err(Error::NotHomogeneous(chart.name(t_index).to_string()));
    }
    let base = chart.without(t_index)?;
    let full = |i: usize| if i < t_index { i } else { i + 1 };
    let m = base.dim();
    let e_comps = (0..m)
        .map(|i| (-sigma.component(&[full(i), t_index])).restrict_zero(t_index, &base))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            entries.push((vec![i, j], sigma.component(&[full(i), full(j)]).restrict_zero(t_index, &base)?));
        }
    }
    JacobiPair::new(MultivectorField::from_components(&base, 2, entries)?, MultivectorField::from_vec(&base, e_comps)?)
}

fn lift_pair<C: Coeff>(p: &JacobiPair<C>, chart: &Arc<Chart>) -> Result<JacobiPair<C>> {
    JacobiPair::new(p.lambda().lift(chart)?, p.e().lift(chart)?)
}

/// Checks `[E₁,Λ₂] + [E₂,Λ₁] = 0` and `[Λ₁,Λ₂] = E₁∧Λ₂ + E₂∧Λ₁`, and
/// independently that `π₁ − λπ₂` is Poisson for a fresh coordinate `λ`.
pub fn is_jacobi_pencil<C: Coeff>(p1: &JacobiPair<C>, p2: &JacobiPair<C>) -> Result<CheckReport> {
    for p in [p1, p2] {
        let r = is_jacobi(p);
        if !r.passed() {
            return Err(Error::NotJacobi { residuals: r.residuals.into_iter().chain(r.notes).collect() });
        }
    }
    let (l1, e1, l2, e2) = (p1.lambda(), p1.e(), p2.lambda(), p2.e());
    Ok(run_check("is_jacobi_pencil", |r| {
        let vec_part = schouten_bracket(e1, l2)?.try_add(&schouten_bracket(e2, l1)?)?;
        let a = r.clause("[E1,Λ2] + [E2,Λ1] = 0", vec_part.residuals("[E1,Λ2] + [E2,Λ1]"));
        let biv = schouten_bracket(l1, l2)?.try_sub(&e1.wedge(l2)?)?.try_sub(&e2.wedge(l1)?)?;
        let b = r.clause("[Λ1,Λ2] = E1∧Λ2 + E2∧Λ1", biv.residuals("[Λ1,Λ2] − E1∧Λ2 − E2∧Λ1"));

        let chart = p1.chart();
        let lam_name = chart.fresh_name("lambda");
        let with_lam = chart.extended(&lam_name)?;
        let t_name = with_lam.fresh_name("t");
        let pi1 = poissonize_with(&lift_pair(p1, &with_lam)?, &t_name)?;
        let pi2 = poissonize_with(&lift_pair(p2, &with_lam)?, &t_name)?;
        let lam = ScalarField::coord(pi1.chart(), chart.dim());
        let sigma = pi1.try_sub(&pi2.scale(&lam)?)?;
        let route3 = r.info(
            "[π1 − λπ2, π1 − λπ2] = 0",
            schouten_bracket(&sigma, &sigma)?.residuals("[π1 − λπ2, π1 − λπ2]"),
        );
        if route3 != (a && b) {
            r.flag_error("pencil conditions and the Poissonized pencil disagree");
        }
        Ok(())
    }))
}

/// Inverse of a square matrix over the scalar field by Gauss–Jordan elimination.
pub fn invert_matrix<C: Coeff>(chart: &Arc<Chart>, m: &[Vec<ScalarField<C>>]) -> Result<Vec<Vec<ScalarField<C>>>> {
    let n = m.len();
    let mut a: Vec<Vec<ScalarField<C>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { ScalarField::one(chart) } else { ScalarField::zero(chart) }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Degenerate)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip()?;
        a[col] = a[col].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            let pivot_row = a[col].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn form_matrix<C: Coeff>(f: &DifferentialForm<C>) -> Vec<Vec<ScalarField<C>>> {
    let n = f.dim();
    (0..n).map(|i| (0..n).map(|j| f.component(&[i, j])).collect()).collect()
}

fn check_two_form<C: Coeff>(f: &DifferentialForm<C>) -> Result<()> {
    if f.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: f.degree() });
    }
    Ok(())
}

/// The Jacobi pair of a locally conformal symplectic pair `(F, ω)`:
/// `i_{Λα}F = −α` and `i_E F = −ω`.
pub fn lcs_to_jacobi<C: Coeff>(f: &DifferentialForm<C>, omega: &DifferentialForm<C>) -> Result<JacobiPair<C>> {
    check_two_form(f)?;
    if omega.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: omega.degree() });
    }
    let chart = f.chart();
    let n = chart.dim();
    let mut residuals = Vec::new();
    if n % 2 == 1 {
        residuals.push(format!("odd dimension {n}"));
    }
    residuals.extend(exterior_derivative(omega).residuals("dω"));
    let structure = exterior_derivative(f).try_add(&omega.wedge(f)?)?;
    residuals.extend(structure.residuals("dF + ω∧F"));
    if !residuals.is_empty() {
        return Err(Error::NotLcs { residuals });
    }
    let inv = invert_matrix(chart, &form_matrix(f))?;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push((vec![i, j], -&inv[i][j]));
        }
    }
    let w = omega.as_slice();
    let e = (0..n)
        .map(|i| crate::scalar::sum(chart, inv[i].iter().zip(w).map(|(a, b)| a * b)))
        .collect();
    JacobiPair::new(MultivectorField::from_components(chart, 2, entries)?, MultivectorField::from_vec(chart, e)?)
}

/// `J = ♭₂⁻¹∘♭₁` for two nondegenerate 2-forms, `♭ᵢX = −i_X Fᵢ`.
pub fn lcs_endomorphism<C: Coeff>(f1: &DifferentialForm<C>, f2: &DifferentialForm<C>) -> Result<EndomorphismField<C>> {
    check_two_form(f1)?;
    check_two_form(f2)?;
    let chart = f1.chart();
    let inv = invert_matrix(chart, &form_matrix(f2))?;
    let inv = EndomorphismField::from_rows(chart, inv)?;
    inv.compose(&EndomorphismField::from_rows(chart, form_matrix(f1))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{chart, parse_scalar};
    use num_rational::BigRational;

    type S = ScalarField<BigRational>;
    type Mv = MultivectorField<BigRational>;
    type Fm = DifferentialForm<BigRational>;

    fn s(text: &str, c: &Arc<Chart>) -> S {
        parse_scalar(text, c).unwrap()
    }

    fn v(c: &Arc<Chart>, idx: &[usize]) -> Mv {
        Mv::basis(c, idx).unwrap()
    }

    fn contact() -> JacobiPair<BigRational> {
        let c = chart(&["x1", "x2", "x3"]);
        let l = (&v(&c, &[0]) + &v(&c, &[2]).scale(&s("x2", &c)).unwrap()).wedge(&v(&c, &[1])).unwrap();
        JacobiPair::new(l, v(&c, &[2])).unwrap()
    }

    #[test]
    fn poisson_examples() {
        let c = chart(&["x1", "x2", "x3"]);
        assert!(is_poisson(&v(&c, &[0, 1])).passed());
        let so3 = Mv::from_components(
            &c,
            2,
            [(vec![0, 1], s("x3", &c)), (vec![1, 2], s("x1", &c)), (vec![0, 2], s("-x2", &c))],
        )
        .unwrap();
        assert!(is_poisson(&so3).passed());
        let jacobiator = |pi: &Mv| {
            let p = JacobiPair::poisson(pi.clone()).unwrap();
            let x = S::coords(&c);
            let b = |f: &S, g: &S| jacobi_bracket(&p, f, g).unwrap();
            &(&b(&x[0], &b(&x[1], &x[2])) + &b(&x[1], &b(&x[2], &x[0]))) + &b(&x[2], &b(&x[0], &x[1]))
        };
        let mixed = &v(&c, &[0, 1]).scale(&s("x3", &c)).unwrap() + &v(&c, &[1, 2]);
        assert!(jacobiator(&mixed).is_zero());
        assert!(is_poisson(&mixed).passed());
        let broken = &v(&c, &[0, 1]) + &v(&c, &[1, 2]).scale(&s("x2", &c)).unwrap();
        assert!(!jacobiator(&broken).is_zero());
        let r = is_poisson(&broken);
        assert!(!r.passed());
        assert_eq!(r.residuals.len(), 1);
    }

    #[test]
    fn jacobi_examples() {
        let c = chart(&["x1", "x2", "x3"]);
        assert!(is_jacobi(&JacobiPair::poisson(v(&c, &[0, 1])).unwrap()).passed());
        assert!(is_jacobi(&contact()).passed());
        let bad = is_jacobi(&JacobiPair::new(v(&c, &[0, 1]), v(&c, &[2])).unwrap());
        assert!(!bad.passed());
        assert_eq!(bad.residuals, ["[Λ,Λ] − 2E∧Λ (1,2,3): -2"]);
    }

    #[test]
    fn bracket_examples() {
        let p = contact();
        let c = p.chart().clone();
        assert_eq!(jacobi_bracket(&p, &s("x1", &c), &s("x2", &c)).unwrap(), s("1", &c));
        assert_eq!(jacobi_bracket(&p, &s("x3", &c), &S::one(&c)).unwrap(), s("-1", &c));
        let so3 = JacobiPair::poisson(
            Mv::from_components(
                &c,
                2,
                [(vec![0, 1], s("x3", &c)), (vec![1, 2], s("x1", &c)), (vec![0, 2], s("-x2", &c))],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(jacobi_bracket(&so3, &s("x1", &c), &s("x2", &c)).unwrap(), s("x3", &c));
    }

    #[test]
    fn poissonization_examples() {
        let c = chart(&["x1"]);
        let p = JacobiPair::new(Mv::zero(&c, 2), v(&c, &[0])).unwrap();
        let pi = poissonize(&p).unwrap();
        let ct = pi.chart().clone();
        assert_eq!(ct.names(), ["x1", "t"]);
        let expected = v(&ct, &[1, 0]).scale(&s("exp(-t)", &ct)).unwrap();
        assert_eq!(pi, expected);
        assert_eq!(depoissonize(&pi, 1).unwrap(), p);

        let c2 = chart(&["x1", "x2"]);
        let q = JacobiPair::poisson(v(&c2, &[0, 1])).unwrap();
        let pq = poissonize(&q).unwrap();
        assert_eq!(pq, v(pq.chart(), &[0, 1]).scale(&s("exp(-t)", pq.chart())).unwrap());
        assert_eq!(depoissonize(&pq, 2).unwrap(), q);
        assert!(matches!(depoissonize(&v(pq.chart(), &[0, 1]), 2), Err(Error::NotHomogeneous(_))));

        let cp = contact();
        let pc = poissonize(&cp).unwrap();
        assert!(is_poisson(&pc).passed());
        assert_eq!(depoissonize(&pc, 3).unwrap(), cp);
        let clash = JacobiPair::poisson(Mv::zero(&chart(&["t"]), 2)).unwrap();
        assert!(matches!(poissonize(&clash), Err(Error::NameClash(_))));
    }

    #[test]
    fn pencil_examples() {
        let p = contact();
        let r = is_jacobi_pencil(&p, &p).unwrap();
        assert!(r.passed(), "{r}");
        let c4 = chart(&["x1", "x2", "x3", "x4"]);
        let a = JacobiPair::poisson(v(&c4, &[0, 1])).unwrap();
        let b = JacobiPair::poisson(v(&c4, &[2, 3])).unwrap();
        assert!(is_jacobi_pencil(&a, &b).unwrap().passed());
        let c = p.chart().clone();
        let q = JacobiPair::new(Mv::zero(&c, 2), v(&c, &[2])).unwrap();
        let r = is_jacobi_pencil(&p, &q).unwrap();
        assert_eq!(r.status, crate::jacobi::Status::Fail);
        assert_eq!(r.residuals, ["[Λ1,Λ2] − E1∧Λ2 − E2∧Λ1 (1,2,3): -1"]);
        assert_eq!(r.clause_passed("[π1 − λπ2, π1 − λπ2] = 0"), Some(false));
        let not = JacobiPair::new(v(&c, &[0, 1]), v(&c, &[2])).unwrap();
        assert!(matches!(is_jacobi_pencil(&p, &not), Err(Error::NotJacobi { .. })));
    }

    #[test]
    fn lcs_examples() {
        let c = chart(&["x1", "x2"]);
        let f = Fm::basis(&c, &[0, 1]).unwrap();
        let zero = Fm::zero(&c, 1);
        assert_eq!(lcs_to_jacobi(&f, &zero).unwrap(), JacobiPair::poisson(v(&c, &[0, 1])).unwrap());
        let p = lcs_to_jacobi(&f, &Fm::basis(&c, &[0]).unwrap()).unwrap();
        assert_eq!(p, JacobiPair::new(v(&c, &[0, 1]), v(&c, &[1])).unwrap());
        assert!(is_jacobi(&p).passed());

        let c4 = chart(&["x1", "x2", "x3", "x4"]);
        let sym = &Fm::basis(&c4, &[0, 1]).unwrap() + &Fm::basis(&c4, &[2, 3]).unwrap();
        let f1 = sym.scale(&s("exp(x1)", &c4)).unwrap();
        let omega = Fm::basis(&c4, &[0]).unwrap().neg();
        let p1 = lcs_to_jacobi(&f1, &omega).unwrap();
        let e = s("exp(-x1)", &c4);
        let expected_l = (&v(&c4, &[0, 1]) + &v(&c4, &[2, 3])).scale(&e).unwrap();
        assert_eq!(p1, JacobiPair::new(expected_l, v(&c4, &[1]).scale(&e).unwrap().neg()).unwrap());
        assert!(is_jacobi(&p1).passed());

        assert!(matches!(lcs_to_jacobi(&f1, &Fm::basis(&c4, &[0]).unwrap()), Err(Error::NotLcs { .. })));
        assert!(matches!(lcs_to_jacobi(&Fm::basis(&c4, &[0, 1]).unwrap(), &Fm::zero(&c4, 1)), Err(Error::Degenerate)));

        let f2 = f1.scale_const(&BigRational::from_integer(2.into()));
        let j = lcs_endomorphism(&f1, &f2).unwrap();
        assert_eq!(j, EndomorphismField::scalar(&s("1/2", &c4)));
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let c = chart(&["x", "y"]);
        let m = vec![vec![s("x", &c), s("1", &c)], vec![s("exp(y)", &c), s("x*y", &c)]];
        let inv = invert_matrix(&c, &m).unwrap();
        let a = EndomorphismField::from_rows(&c, m).unwrap();
        let b = EndomorphismField::from_rows(&c, inv).unwrap();
        assert_eq!(a.compose(&b).unwrap(), EndomorphismField::identity(&c));
    }
}
