use super::compat::concomitant_with;
use super::{basis_forms, basis_vectors, dx, jacobi_bracket, run_check, CheckReport, JacobiPair};
use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::scalar::ScalarField;
use crate::tensor::{lie_derivative, schouten_bracket, EndomorphismField, MultivectorField};

/// `[π,π] = 0` and `[Z,π] = −π`.
pub fn is_homogeneous_poisson<C: Coeff>(pi: &MultivectorField<C>, z: &MultivectorField<C>) -> CheckReport {
    run_check("is_homogeneous_poisson", |r| {
        r.clause("[π,π] = 0", schouten_bracket(pi, pi)?.residuals("[π,π]"));
        let zp = schouten_bracket(z, pi)?.try_add(pi)?;
        r.clause("[Z,π] = −π", zp.residuals("[Z,π] + π"));
        Ok(())
    })
}

fn violated(what: &str, residuals: Vec<String>) -> Error {
    Error::HypothesisViolated(format!("{what}: {}", residuals.join("; ")))
}

/// For a homogeneous Poisson–Nijenhuis triple, checks
/// `π∘(L_Z∘ᵗJ − ᵗJ∘L_Z) = 0` on basis covectors and cross-checks it against
/// `[Z,Jπ] = −Jπ`. `[Z,JX] = J[Z,X]` on basis fields is reported separately.
pub fn check_homogeneous_pn<C: Coeff>(
    pi: &MultivectorField<C>,
    z: &MultivectorField<C>,
    j: &EndomorphismField<C>,
) -> Result<CheckReport> {
    let h = is_homogeneous_poisson(pi, z);
    if !h.passed() {
        return Err(violated("(π,Z) is not homogeneous Poisson", h.residuals.into_iter().chain(h.notes).collect()));
    }
    let jp = j.compose_bivector(pi).map_err(|e| Error::HypothesisViolated(format!("J∘π ≠ π∘ᵗJ: {e}")))?;
    let chart = pi.chart();
    let basis = basis_forms(chart);
    let mut bad = Vec::new();
    for (a, alpha) in basis.iter().enumerate() {
        for (b, beta) in basis.iter().enumerate() {
            let c = concomitant_with(pi, &jp, j, alpha, beta)?;
            bad.extend(c.residuals(&format!("C(π,J)({},{})", dx(chart, a), dx(chart, b))));
        }
    }
    let images = basis.iter().map(|a| pi.contract(a)).collect::<Result<Vec<_>>>()?;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            let t = j.nijenhuis_torsion(&images[a], &images[b])?;
            bad.extend(t.residuals(&format!("N_J(π{},π{})", dx(chart, a), dx(chart, b))));
        }
    }
    if !bad.is_empty() {
        return Err(violated("(π,J) is not Poisson–Nijenhuis", bad));
    }
    Ok(run_check("check_homogeneous_pn", |r| {
        let mut eq9 = Vec::new();
        for (a, alpha) in basis.iter().enumerate() {
            let d = lie_derivative(z, &j.transpose_apply(alpha)?)?
                .try_sub(&j.transpose_apply(&lie_derivative(z, alpha)?)?)?;
            eq9.extend(pi.contract(&d)?.residuals(&format!("π(L_Z ᵗJα − ᵗJ L_Zα), α={}", dx(chart, a))));
        }
        let holds = r.clause("π∘(L_Z∘ᵗJ − ᵗJ∘L_Z) = 0", eq9);
        let direct = schouten_bracket(z, &jp)?.try_add(&jp)?;
        let homogeneous = r.info("[Z,Jπ] = −Jπ", direct.residuals("[Z,Jπ] + Jπ"));
        if holds != homogeneous {
            r.flag_error("the operator condition and [Z,Jπ] = −Jπ disagree");
        }
        let mut cor = Vec::new();
        for (i, x) in basis_vectors(chart).iter().enumerate() {
            let d = schouten_bracket(z, &j.apply(x)?)?.try_sub(&j.apply(&schouten_bracket(z, x)?)?)?;
            cor.extend(d.residuals(&format!("[Z,J∂{0}] − J[Z,∂{0}]", chart.name(i))));
        }
        r.info("[Z,JX] = J[Z,X]", cor);
        Ok(())
    }))
}

/// Checks `{a·f̃, a·g̃}_src = a·({f,g}_dst)~` for every pair of test
/// functions, where `~` lifts along the projection that drops the trailing
/// coordinates of the source chart.
pub fn verify_conformal_morphism<C: Coeff>(
    src: &JacobiPair<C>,
    dst: &JacobiPair<C>,
    a: &ScalarField<C>,
    tests: &[ScalarField<C>],
) -> CheckReport {
    run_check("verify_conformal_morphism", |r| {
        r.note("the conformal factor is assumed nowhere zero");
        if tests.is_empty() {
            r.note("warning: no test functions, the check holds vacuously");
            return Ok(());
        }
        let chart = src.chart();
        let lifted = tests.iter().map(|f| f.lift(chart)).collect::<Result<Vec<_>>>()?;
        let mut res = Vec::new();
        for i in 0..tests.len() {
            for k in i + 1..tests.len() {
                let lhs = jacobi_bracket(src, &a.try_mul(&lifted[i])?, &a.try_mul(&lifted[k])?)?;
                let rhs = a.try_mul(&jacobi_bracket(dst, &tests[i], &tests[k])?.lift(chart)?)?;
                let d = lhs.try_sub(&rhs)?;
                if !d.is_zero() {
                    res.push(format!("{{a·{0}, a·{1}}} − a·{{{0},{1}}}: {d}", tests[i], tests[k]));
                }
            }
        }
        r.clause("{a·f, a·g}₁ = a·{f,g}₂", res);
        Ok(())
    })
}
