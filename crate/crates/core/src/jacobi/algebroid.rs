use super::compat::clause_ii;
use super::{basis_forms, dx, is_jacobi, run_check, scalar_residual, CheckReport, FieldPair, JacobiPair};
use super::{RecursionOperator, SectionPair};
use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::scalar::ScalarField;
use crate::tensor::{apply_vector, differential, lie_bracket, lie_derivative, pair, schouten_bracket};

fn require_jacobi<C: Coeff>(p: &JacobiPair<C>) -> Result<()> {
    let r = is_jacobi(p);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::NotJacobi { residuals: r.residuals.into_iter().chain(r.notes).collect() })
    }
}

pub(crate) fn anchor_of<C: Coeff>(p: &JacobiPair<C>, s: &SectionPair<C>) -> Result<crate::tensor::MultivectorField<C>> {
    p.lambda().contract(&s.alpha)?.try_add(&p.e().scale(&s.f)?)
}

/// `#(α,f) = Λα + fE`.
pub fn anchor<C: Coeff>(p: &JacobiPair<C>, s: &SectionPair<C>) -> Result<crate::tensor::MultivectorField<C>> {
    require_jacobi(p)?;
    anchor_of(p, s)
}

pub(crate) fn bracket_of<C: Coeff>(
    p: &JacobiPair<C>,
    s1: &SectionPair<C>,
    s2: &SectionPair<C>,
) -> Result<SectionPair<C>> {
    let (l, e) = (p.lambda(), p.e());
    let (a, f, b, g) = (&s1.alpha, &s1.f, &s2.alpha, &s2.f);
    let (df, dg) = (differential(f), differential(g));
    let ea = pair(a, e)?;
    let eb = pair(b, e)?;
    let i_e_ab = b.scale(&ea)?.try_sub(&a.scale(&eb)?)?;
    let form = super::form_bracket(l, a, b)?
        .try_add(&lie_derivative(e, b)?.scale(f)?)?
        .try_sub(&lie_derivative(e, a)?.scale(g)?)?
        .try_sub(&i_e_ab)?;
    let lab = l.evaluate(&[a, b])?;
    let func = &(&(&(-&lab) + &l.evaluate(&[a, &dg])?) - &l.evaluate(&[b, &df])?)
        + &(&(f * &pair(&dg, e)?) - &(g * &pair(&df, e)?));
    SectionPair::new(form, func)
}

/// The bracket of the Lie algebroid `T*M ⊕ ℝ` of a Jacobi pair.
pub fn algebroid_bracket<C: Coeff>(
    p: &JacobiPair<C>,
    s1: &SectionPair<C>,
    s2: &SectionPair<C>,
) -> Result<SectionPair<C>> {
    require_jacobi(p)?;
    bracket_of(p, s1, s2)
}

/// `[(X₁,f₁),(X₂,f₂)]⋆ = ([X₁,X₂], X₁(f₂) − X₂(f₁))`.
pub fn star_bracket<C: Coeff>(a: &FieldPair<C>, b: &FieldPair<C>) -> Result<FieldPair<C>> {
    let x = lie_bracket(&a.x, &b.x)?;
    let f = apply_vector(&a.x, &b.f)?.try_sub(&apply_vector(&b.x, &a.f)?)?;
    FieldPair::new(x, f)
}

/// `~#(α,g) = (Λα + gE, −i_Eα)`.
pub fn tilde_anchor<C: Coeff>(p: &JacobiPair<C>, s: &SectionPair<C>) -> Result<FieldPair<C>> {
    let x = anchor_of(p, s)?;
    let f = -pair(&s.alpha, p.e())?;
    FieldPair::new(x, f)
}

/// `N_𝒥(a,b) = [𝒥a,𝒥b]⋆ − 𝒥[𝒥a,b]⋆ − 𝒥[a,𝒥b]⋆ + 𝒥²[a,b]⋆`.
fn torsion<C: Coeff>(r: &RecursionOperator<C>, a: &FieldPair<C>, b: &FieldPair<C>) -> Result<FieldPair<C>> {
    let ja = r.apply(a)?;
    let jb = r.apply(b)?;
    let t1 = star_bracket(&ja, &jb)?;
    let t2 = r.apply(&star_bracket(&ja, b)?)?;
    let t3 = r.apply(&star_bracket(a, &jb)?)?;
    let t4 = r.apply(&r.apply(&star_bracket(a, b)?)?)?;
    t1.try_sub(&t2)?.try_sub(&t3)?.try_add(&t4)
}

/// Checks that `(Λ, E, 𝒥)` is a Jacobi–Nijenhuis structure: the three
/// commutation conditions for `𝒥∘~# = ~#∘ᵗ𝒥`, vanishing of `N_𝒥` on the
/// image of `~#`, then C₁, C₂ (`k ≤ k_max`) and C₃.
pub fn recursion_operator_check<C: Coeff>(
    p: &JacobiPair<C>,
    rec: &RecursionOperator<C>,
    k_max: u32,
) -> CheckReport {
    run_check("recursion_operator_check", |r| {
        require_jacobi(p)?;
        let chart = p.chart();
        let (l, e) = (p.lambda(), p.e());
        let (j, x0, a0, phi0) = (rec.j(), rec.x0(), rec.alpha0(), rec.phi0());
        let basis = basis_forms(chart);

        r.clause("commutation: i_Eα₀ = 0", scalar_residual("i_Eα₀", &pair(a0, e)?));
        let c1 = j.apply(e)?.try_sub(&l.contract(a0)?)?.try_sub(&e.scale(phi0)?)?;
        r.clause("commutation: JE = Λα₀ + φ₀E", c1.residuals("JE − Λα₀ − φ₀E"));
        let mut third = Vec::new();
        for (i, alpha) in basis.iter().enumerate() {
            let lhs = j.apply(&l.contract(alpha)?)?.try_sub(&l.contract(&j.transpose_apply(alpha)?)?)?;
            let rhs = x0.scale(&pair(alpha, e)?)?.try_add(&e.scale(&pair(alpha, x0)?)?)?;
            let label = format!("JΛα − ΛᵗJα − (i_Eα)X₀ − (i_X₀α)E, α={}", dx(chart, i));
            third.extend(lhs.try_sub(&rhs)?.residuals(&label));
        }
        r.clause("commutation: JΛα − ΛᵗJα = (i_Eα)X₀ + (i_X₀α)E", third);

        let mut family = Vec::new();
        let mut labels = Vec::new();
        let zero_form = crate::tensor::DifferentialForm::zero(chart, 1);
        let mut gs = vec![("0".to_string(), ScalarField::zero(chart)), ("1".to_string(), ScalarField::one(chart))];
        gs.extend((0..chart.dim()).map(|i| (chart.name(i).to_string(), ScalarField::coord(chart, i))));
        for (ai, alpha) in basis.iter().chain(std::iter::once(&zero_form)).enumerate() {
            let alabel = if ai < basis.len() { dx(chart, ai) } else { "0".to_string() };
            for (glabel, g) in &gs {
                if alpha.is_zero() && g.is_zero() {
                    continue;
                }
                family.push(tilde_anchor(p, &SectionPair::new(alpha.clone(), g.clone())?)?);
                labels.push(format!("~#({alabel},{glabel})"));
            }
        }
        let mut res = Vec::new();
        for a in 0..family.len() {
            for b in a + 1..family.len() {
                let t = torsion(rec, &family[a], &family[b])?;
                res.extend(t.residuals(&format!("N_𝒥({},{})", labels[a], labels[b])));
            }
        }
        r.clause("N_𝒥 = 0 on the image of ~#", res);

        r.clause("C1: JE = Λα₀ + φ₀E", c1.residuals("JE − Λα₀ − φ₀E"));
        let jl = match j.compose_bivector(l) {
            Ok(jl) => jl,
            Err(Error::NotABivector { residual }) => {
                r.clause("J∘Λ = Λ∘ᵗJ", residual.into_iter().map(|s| format!("JΛ + (JΛ)ᵀ {s}")).collect());
                r.note("C2 and C3 not evaluated: JΛ is not a bivector");
                return Ok(());
            }
            Err(other) => return Err(other),
        };
        r.note(format!("C2 checked for 1 ≤ k ≤ {k_max}"));
        let mut jk = j.clone();
        for k in 1..=k_max {
            let jkl = jk.compose_bivector(l);
            let res = match jkl {
                Ok(jkl) => schouten_bracket(&jk.apply(e)?, l)?
                    .try_add(&schouten_bracket(e, &jkl)?)?
                    .residuals(&format!("[J^{k}E,Λ] + [E,J^{k}Λ]")),
                Err(Error::NotABivector { residual }) => {
                    residual.into_iter().map(|s| format!("J^{k}Λ + (J^{k}Λ)ᵀ {s}")).collect()
                }
                Err(other) => return Err(other),
            };
            r.clause(&format!("C2 k={k}"), res);
            jk = j.compose(&jk)?;
        }
        r.clause("C3", clause_ii(p, j, &jl, "C3")?);
        Ok(())
    })
}
