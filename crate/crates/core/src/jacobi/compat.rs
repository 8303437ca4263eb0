use super::{basis_forms, dx, is_jacobi, run_check, scalar_residual, CheckReport, JacobiPair};
use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::tensor::{
    differential, lie_derivative, pair, schouten_bracket, DifferentialForm, EndomorphismField, MultivectorField,
};

pub const DEFAULT_KMAX: u32 = 3;

/// `{α,β}_Λ = L_{Λα}β − L_{Λβ}α − d(Λ(α,β))`.
pub fn form_bracket<C: Coeff>(
    lambda: &MultivectorField<C>,
    alpha: &DifferentialForm<C>,
    beta: &DifferentialForm<C>,
) -> Result<DifferentialForm<C>> {
    let la = lambda.contract(alpha)?;
    let lb = lambda.contract(beta)?;
    let lab = lambda.evaluate(&[alpha, beta])?;
    lie_derivative(&la, beta)?.try_sub(&lie_derivative(&lb, alpha)?)?.try_sub(&differential(&lab))
}

/// `C(Λ,J)(α,β) = {α,β}_{JΛ} − ({ᵗJα,β}_Λ + {α,ᵗJβ}_Λ − ᵗJ{α,β}_Λ)`.
pub fn concomitant<C: Coeff>(
    lambda: &MultivectorField<C>,
    j: &EndomorphismField<C>,
    alpha: &DifferentialForm<C>,
    beta: &DifferentialForm<C>,
) -> Result<DifferentialForm<C>> {
    let jl = j.compose_bivector(lambda)?;
    concomitant_with(lambda, &jl, j, alpha, beta)
}

/// [`concomitant`] with `JΛ` supplied.
pub(crate) fn concomitant_with<C: Coeff>(
    lambda: &MultivectorField<C>,
    jl: &MultivectorField<C>,
    j: &EndomorphismField<C>,
    alpha: &DifferentialForm<C>,
    beta: &DifferentialForm<C>,
) -> Result<DifferentialForm<C>> {
    let ja = j.transpose_apply(alpha)?;
    let jb = j.transpose_apply(beta)?;
    let twisted = form_bracket(lambda, &ja, beta)?
        .try_add(&form_bracket(lambda, alpha, &jb)?)?
        .try_sub(&j.transpose_apply(&form_bracket(lambda, alpha, beta)?)?)?;
    form_bracket(jl, alpha, beta)?.try_sub(&twisted)
}

/// `N_J(Λα,Λβ)` on basis covectors `α = dx^i`, `β = dx^j`, `i < j`.
fn torsion_on_image<C: Coeff>(p: &JacobiPair<C>, j: &EndomorphismField<C>) -> Result<Vec<String>> {
    let chart = p.chart();
    let images = basis_forms(chart).iter().map(|a| p.lambda().contract(a)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            let t = j.nijenhuis_torsion(&images[a], &images[b])?;
            out.extend(t.residuals(&format!("N_J(Λ{},Λ{})", dx(chart, a), dx(chart, b))));
        }
    }
    Ok(out)
}

/// `N_J(Λα, V)` on basis covectors.
fn torsion_against<C: Coeff>(
    p: &JacobiPair<C>,
    j: &EndomorphismField<C>,
    v: &MultivectorField<C>,
    label: &str,
) -> Result<Vec<String>> {
    let chart = p.chart();
    let mut out = Vec::new();
    for (a, alpha) in basis_forms(chart).iter().enumerate() {
        let t = j.nijenhuis_torsion(&p.lambda().contract(alpha)?, v)?;
        out.extend(t.residuals(&format!("N_J(Λ{},{label})", dx(chart, a))));
    }
    Ok(out)
}

/// Residuals of `⟨ᵗJγ, Λ(C(Λ,J)(α,β)) − Λ(α,β)JE + Λ(α,ᵗJβ)E⟩` over basis covectors.
pub(crate) fn clause_ii<C: Coeff>(
    p: &JacobiPair<C>,
    j: &EndomorphismField<C>,
    jl: &MultivectorField<C>,
    tag: &str,
) -> Result<Vec<String>> {
    let chart = p.chart();
    let (l, e) = (p.lambda(), p.e());
    let je = j.apply(e)?;
    let basis = basis_forms(chart);
    let jt: Vec<_> = basis.iter().map(|g| j.transpose_apply(g)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (a, alpha) in basis.iter().enumerate() {
        for (b, beta) in basis.iter().enumerate() {
            let c = concomitant_with(l, jl, j, alpha, beta)?;
            let v = l
                .contract(&c)?
                .try_sub(&je.scale(&l.evaluate(&[alpha, beta])?)?)?
                .try_add(&e.scale(&l.evaluate(&[alpha, &jt[b]])?)?)?;
            if v.is_zero() {
                continue;
            }
            for (g, jg) in jt.iter().enumerate() {
                let label = format!("{tag} α={}, β={}, γ={}", dx(chart, a), dx(chart, b), dx(chart, g));
                out.extend(scalar_residual(&label, &pair(jg, &v)?));
            }
        }
    }
    Ok(out)
}

/// `[J^kE, Λ] + [E, J^kΛ]`.
fn clause_iii<C: Coeff>(p: &JacobiPair<C>, j: &EndomorphismField<C>, k: u32) -> Result<MultivectorField<C>> {
    let jk = j.pow(k);
    let a = schouten_bracket(&jk.apply(p.e())?, p.lambda())?;
    let b = schouten_bracket(p.e(), &jk.compose_bivector(p.lambda())?)?;
    a.try_add(&b)
}

fn not_a_bivector(e: Error) -> Result<Vec<String>> {
    match e {
        Error::NotABivector { residual } => Ok(residual.into_iter().map(|r| format!("JΛ + (JΛ)ᵀ {r}")).collect()),
        other => Err(other),
    }
}

/// Compatibility of `J` with `(Λ,E)`: torsion hypotheses for `k ≤ k_max`,
/// `J∘Λ = Λ∘ᵗJ`, the scalar clause on basis covectors and
/// `[J^kE,Λ] + [E,J^kΛ] = 0` for `1 ≤ k ≤ k_max`.
pub fn check_compatibility<C: Coeff>(p: &JacobiPair<C>, j: &EndomorphismField<C>, k_max: u32) -> CheckReport {
    run_check("check_compatibility", |r| {
        if k_max < 1 {
            return Err(Error::HypothesisViolated("k_max must be at least 1".into()));
        }
        r.note(format!("torsion hypotheses and (iii) checked for k ≤ {k_max}"));
        r.clause("N_J(Λα,Λβ) = 0", torsion_on_image(p, j)?);
        let mut jke = p.e().clone();
        for k in 0..=k_max {
            let label = if k == 0 { "E".to_string() } else { format!("J^{k}E") };
            r.clause(&format!("N_J(Λα,J^kE) = 0, k={k}"), torsion_against(p, j, &jke, &label)?);
            jke = j.apply(&jke)?;
        }
        let jl = match j.compose_bivector(p.lambda()) {
            Ok(jl) => {
                r.clause("(i) J∘Λ = Λ∘ᵗJ", Vec::new());
                jl
            }
            Err(e) => {
                r.clause("(i) J∘Λ = Λ∘ᵗJ", not_a_bivector(e)?);
                r.note("(ii) and (iii) not evaluated: JΛ is not a bivector");
                return Ok(());
            }
        };
        r.clause("(ii)", clause_ii(p, j, &jl, "(ii)")?);
        for k in 1..=k_max {
            let res = match clause_iii(p, j, k) {
                Ok(t) => t.residuals(&format!("[J^{k}E,Λ] + [E,J^{k}Λ]")),
                Err(e) => not_a_bivector(e)?,
            };
            r.clause(&format!("(iii) k={k}"), res);
        }
        Ok(())
    })
}

/// Decides whether `(JΛ, JE)` is Jacobi through conditions (a) and (b), and
/// independently through [`is_jacobi`]; the two answers must agree.
pub fn check_theorem_rec<C: Coeff>(p: &JacobiPair<C>, j: &EndomorphismField<C>) -> Result<CheckReport> {
    let base = is_jacobi(p);
    if !base.passed() {
        return Err(Error::HypothesisViolated(format!("(Λ,E) is not Jacobi: {}", base.residuals.join("; "))));
    }
    let jl = j.compose_bivector(p.lambda()).map_err(|e| Error::HypothesisViolated(format!("J∘Λ ≠ Λ∘ᵗJ: {e}")))?;
    let mut torsion = torsion_on_image(p, j)?;
    torsion.extend(torsion_against(p, j, p.e(), "E")?);
    if !torsion.is_empty() {
        return Err(Error::HypothesisViolated(format!("torsion does not vanish: {}", torsion.join("; "))));
    }
    let chart = p.chart();
    let e = p.e();
    let je = j.apply(e)?;
    Ok(run_check("check_theorem_rec", |r| {
        let first = schouten_bracket(&je, p.lambda())?.try_add(&schouten_bracket(e, &jl)?)?;
        let mut res_a = Vec::new();
        for (a, alpha) in basis_forms(chart).iter().enumerate() {
            let v = j.apply(&first.contract(alpha)?)?;
            res_a.extend(v.residuals(&format!("(a) α={}", dx(chart, a))));
        }
        let a = r.clause("(a)", res_a);
        let b = r.clause("(b)", clause_ii(p, j, &jl, "(b)")?);
        let target = JacobiPair::new(jl.clone(), je.clone())?;
        let direct = is_jacobi(&target);
        if direct.status == super::Status::Error {
            return Err(Error::HypothesisViolated(direct.notes.join("; ")));
        }
        let jac = r.info("is_jacobi(JΛ,JE)", direct.residuals);
        if jac != (a && b) {
            r.flag_error("(a) and (b) disagree with is_jacobi(JΛ,JE)");
        }
        Ok(())
    }))
}

/// `[(J^kΛ, J^kE)]` for `k = 0..=k_max`.
pub fn hierarchy<C: Coeff>(p: &JacobiPair<C>, j: &EndomorphismField<C>, k_max: u32) -> Result<Vec<JacobiPair<C>>> {
    let report = check_compatibility(p, j, k_max);
    if !report.passed() {
        return Err(Error::NotCompatible { residuals: report.residuals.into_iter().chain(report.notes).collect() });
    }
    let mut out = vec![p.clone()];
    let mut jk = EndomorphismField::identity(p.chart());
    for _ in 1..=k_max {
        jk = j.compose(&jk)?;
        out.push(JacobiPair::new(jk.compose_bivector(p.lambda())?, jk.apply(p.e())?)?);
    }
    Ok(out)
}
