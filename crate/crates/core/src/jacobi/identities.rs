use super::compat::concomitant_with;
use super::{check_compatibility, form_bracket, run_check, CheckReport, JacobiPair};
use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::scalar::ScalarField;
use crate::tensor::{lie_derivative, pair, schouten_bracket, DifferentialForm, EndomorphismField, MultivectorField};

/// Names accepted by [`verify_identity`].
pub const IDENTITIES: &[&str] =
    &["eq2", "lemma_bivec", "eq3", "lemma_vec", "eq4", "lemma_nij", "eq5", "eq6", "eq7", "eq8"];

/// Named tensors an identity may refer to. `k` defaults to 1.
#[derive(Clone, Debug, Default)]
pub struct IdentityInputs<C> {
    pub lambda: Option<MultivectorField<C>>,
    pub pi: Option<MultivectorField<C>>,
    pub e: Option<MultivectorField<C>>,
    pub j: Option<EndomorphismField<C>>,
    pub x: Option<MultivectorField<C>>,
    pub y: Option<MultivectorField<C>>,
    pub alpha: Option<DifferentialForm<C>>,
    pub beta: Option<DifferentialForm<C>>,
    pub gamma: Option<DifferentialForm<C>>,
    pub k: Option<u32>,
}

fn need<'a, T>(v: &'a Option<T>, identity: &str, input: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::MissingInput { identity: identity.into(), input: input.into() })
}

struct Ctx<'a, C> {
    name: &'a str,
    inputs: &'a IdentityInputs<C>,
}

impl<C: Coeff> Ctx<'_, C> {
    fn lambda(&self) -> Result<&MultivectorField<C>> {
        need(&self.inputs.lambda, self.name, "lambda")
    }
    fn pi(&self) -> Result<&MultivectorField<C>> {
        need(&self.inputs.pi, self.name, "pi")
    }
    fn e(&self) -> Result<&MultivectorField<C>> {
        need(&self.inputs.e, self.name, "E")
    }
    fn j(&self) -> Result<&EndomorphismField<C>> {
        need(&self.inputs.j, self.name, "J")
    }
    fn x(&self) -> Result<&MultivectorField<C>> {
        need(&self.inputs.x, self.name, "X")
    }
    fn y(&self) -> Result<&MultivectorField<C>> {
        need(&self.inputs.y, self.name, "Y")
    }
    fn alpha(&self) -> Result<&DifferentialForm<C>> {
        need(&self.inputs.alpha, self.name, "alpha")
    }
    fn beta(&self) -> Result<&DifferentialForm<C>> {
        need(&self.inputs.beta, self.name, "beta")
    }
    fn gamma(&self) -> Result<&DifferentialForm<C>> {
        need(&self.inputs.gamma, self.name, "gamma")
    }
    fn k(&self) -> u32 {
        self.inputs.k.unwrap_or(1)
    }
}

enum Residual<C> {
    Scalar(ScalarField<C>),
    Vector(MultivectorField<C>),
}

fn half<C: Coeff>() -> C {
    C::one() / C::from_int(2)
}

/// `JΛ`, failing with `HypothesisViolated` when it is not a bivector.
fn jl_hyp<C: Coeff>(j: &EndomorphismField<C>, l: &MultivectorField<C>) -> Result<MultivectorField<C>> {
    j.compose_bivector(l).map_err(|e| Error::HypothesisViolated(format!("J∘Λ ≠ Λ∘ᵗJ: {e}")))
}

/// `C(Λ,J)(α,β)` computing `JΛ` on the fly.
fn conc<C: Coeff>(
    l: &MultivectorField<C>,
    j: &EndomorphismField<C>,
    a: &DifferentialForm<C>,
    b: &DifferentialForm<C>,
) -> Result<DifferentialForm<C>> {
    let jl = j.compose_bivector(l)?;
    concomitant_with(l, &jl, j, a, b)
}

/// `½[JΛ,JΛ](α,β,γ)`.
fn half_square<C: Coeff>(jl: &MultivectorField<C>, a: &DifferentialForm<C>, b: &DifferentialForm<C>, g: &DifferentialForm<C>) -> Result<ScalarField<C>> {
    Ok(schouten_bracket(jl, jl)?.evaluate(&[a, b, g])?.scale(&half()))
}

fn eq2<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, a, b, g) = (c.lambda()?, c.alpha()?, c.beta()?, c.gamma()?);
    let lhs = pair(g, &l.contract(&form_bracket(l, a, b)?)?)?;
    let vf = schouten_bracket(&l.contract(a)?, &l.contract(b)?)?;
    let rhs = &pair(g, &vf)? + &schouten_bracket(l, l)?.evaluate(&[a, b, g])?.scale(&half());
    Ok(Residual::Scalar(&lhs - &rhs))
}

/// `⟨ᵗJγ, ΛC(Λ,J)(α,β)⟩ − ⟨γ, N_J(Λα,Λβ)⟩`, shared by `eq3` and `lemma_bivec`.
fn common_tail<C: Coeff>(
    l: &MultivectorField<C>,
    jl: &MultivectorField<C>,
    j: &EndomorphismField<C>,
    a: &DifferentialForm<C>,
    b: &DifferentialForm<C>,
    g: &DifferentialForm<C>,
) -> Result<ScalarField<C>> {
    let jg = j.transpose_apply(g)?;
    let c = concomitant_with(l, jl, j, a, b)?;
    let t1 = pair(&jg, &l.contract(&c)?)?;
    let t2 = pair(g, &j.nijenhuis_torsion(&l.contract(a)?, &l.contract(b)?)?)?;
    Ok(&t1 - &t2)
}

fn lemma_bivec<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, e, j, a, b, g) = (c.lambda()?, c.e()?, c.j()?, c.alpha()?, c.beta()?, c.gamma()?);
    let jl = jl_hyp(j, l)?;
    let jacobi = schouten_bracket(l, l)?.try_sub(&e.wedge(l)?.scale_const(&C::from_int(2)))?;
    if !jacobi.is_zero() {
        return Err(Error::HypothesisViolated(format!("[Λ,Λ] ≠ 2E∧Λ: {}", jacobi.residuals("").join(";"))));
    }
    let je = j.apply(e)?;
    let jg = j.transpose_apply(g)?;
    let jb = j.transpose_apply(b)?;
    let lhs = half_square(&jl, a, b, g)?;
    let wedge = je.wedge(&jl)?.evaluate(&[a, b, g])?;
    let t3 = &pair(&jg, e)? * &l.evaluate(&[a, &jb])?;
    let t4 = &pair(&jg, &je)? * &l.evaluate(&[a, b])?;
    let rhs = &(&(&wedge + &common_tail(l, &jl, j, a, b, g)?) + &t3) - &t4;
    Ok(Residual::Scalar(&lhs - &rhs))
}

fn eq3<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, j, a, b, g) = (c.lambda()?, c.j()?, c.alpha()?, c.beta()?, c.gamma()?);
    let jl = jl_hyp(j, l)?;
    let ll = schouten_bracket(l, l)?;
    let (ja, jb, jg) = (j.transpose_apply(a)?, j.transpose_apply(b)?, j.transpose_apply(g)?);
    let jjg = j.transpose_apply(&jg)?;
    let sq = &(&ll.evaluate(&[&ja, b, &jg])? + &ll.evaluate(&[a, &jb, &jg])?) - &ll.evaluate(&[a, b, &jjg])?;
    let rhs = &sq.scale(&half()) + &common_tail(l, &jl, j, a, b, g)?;
    Ok(Residual::Scalar(&half_square(&jl, a, b, g)? - &rhs))
}

fn lemma_vec<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, e, j, a, b) = (c.lambda()?, c.e()?, c.j()?, c.alpha()?, c.beta()?);
    let jl = j.compose_bivector(l)?;
    let je = j.apply(e)?;
    let lhs = schouten_bracket(&je, &jl)?.evaluate(&[a, b])?;
    let t1 = j.nijenhuis_torsion(e, &l.contract(a)?)?;
    let v = j
        .apply(&schouten_bracket(&je, l)?.contract(a)?)?
        .try_add(&j.apply(&schouten_bracket(e, &jl)?.contract(a)?)?)?
        .try_sub(&j.pow(2).apply(&schouten_bracket(e, l)?.contract(a)?)?)?;
    let rhs = &pair(b, &t1)? + &pair(b, &v)?;
    Ok(Residual::Scalar(&lhs - &rhs))
}

fn eq4<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, e, a) = (c.lambda()?, c.e()?, c.alpha()?);
    let lhs = schouten_bracket(e, l)?.contract(a)?;
    let rhs = schouten_bracket(e, &l.contract(a)?)?.try_sub(&l.contract(&lie_derivative(e, a)?)?)?;
    Ok(Residual::Vector(lhs.try_sub(&rhs)?))
}

fn lemma_nij<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (j, x, y) = (c.j()?, c.x()?, c.y()?);
    let k = c.k();
    if k < 1 {
        return Err(Error::HypothesisViolated("lemma_nij needs k ≥ 1".into()));
    }
    let jk = j.pow(k);
    let (jx, jy) = (j.apply(x)?, j.apply(y)?);
    let lhs = j.pow(k + 1).nijenhuis_torsion(x, y)?;
    let inner = j.nijenhuis_torsion(&jk.apply(x)?, y)?.try_add(&j.nijenhuis_torsion(x, &jk.apply(y)?)?)?;
    let tail = j.pow(k - 1).nijenhuis_torsion(&jx, &jy)?.try_sub(&jk.nijenhuis_torsion(x, y)?)?;
    let rhs = jk
        .nijenhuis_torsion(&jx, &jy)?
        .try_add(&jk.apply(&inner)?)?
        .try_sub(&j.pow(2).apply(&tail)?)?;
    Ok(Residual::Vector(lhs.try_sub(&rhs)?))
}

fn eq5<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, j, a, b, x) = (c.lambda()?, c.j()?, c.alpha()?, c.beta()?, c.x()?);
    let jl = j.compose_bivector(l)?;
    let lhs = pair(&conc(&jl, j, a, b)?, x)?;
    let t1 = pair(&concomitant_with(l, &jl, j, &j.transpose_apply(a)?, b)?, x)?;
    let t2 = pair(a, &j.nijenhuis_torsion(&l.contract(b)?, x)?)?;
    Ok(Residual::Scalar(&lhs - &(&t1 + &t2)))
}

fn compatible<C: Coeff>(c: &Ctx<C>, k: u32) -> Result<()> {
    let p = JacobiPair::new(c.lambda()?.clone(), c.e()?.clone())?;
    let r = check_compatibility(&p, c.j()?, k.max(1));
    if r.passed() {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(format!(
            "J is not compatible with (Λ,E): {}",
            r.residuals.iter().chain(&r.notes).cloned().collect::<Vec<_>>().join("; ")
        )))
    }
}

fn eq6<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, j, a, b) = (c.lambda()?, c.j()?, c.alpha()?, c.beta()?);
    let k = c.k();
    compatible(c, k)?;
    let jk = j.pow(k);
    let jkl = jk.compose_bivector(l)?;
    let lhs = jkl.contract(&conc(&jkl, j, a, b)?)?;
    let rhs = jkl.contract(&conc(l, j, &jk.transpose().transpose_apply(a)?, b)?)?;
    Ok(Residual::Vector(lhs.try_sub(&rhs)?))
}

fn eq7<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, e, j, a, b) = (c.lambda()?, c.e()?, c.j()?, c.alpha()?, c.beta()?);
    compatible(c, 1)?;
    let jl = j.compose_bivector(l)?;
    let lhs = jl.contract(&concomitant_with(l, &jl, j, a, b)?)?;
    let je = j.apply(e)?;
    let inner = je.scale(&l.evaluate(&[a, b])?)?.try_sub(&e.scale(&l.evaluate(&[a, &j.transpose_apply(b)?])?)?)?;
    Ok(Residual::Vector(lhs.try_sub(&j.apply(&inner)?)?))
}

fn eq8<C: Coeff>(c: &Ctx<C>) -> Result<Residual<C>> {
    let (l, p, j, a, b, g) = (c.lambda()?, c.pi()?, c.j()?, c.alpha()?, c.beta()?, c.gamma()?);
    let jl = j.compose_bivector(l)?;
    let lhs = schouten_bracket(&jl, p)?.evaluate(&[a, b, g])?;
    let t1 = schouten_bracket(l, p)?.evaluate(&[a, b, &j.transpose_apply(g)?])?;
    let t2 = pair(&conc(p, j, a, g)?, &l.contract(b)?)?;
    let t3 = pair(&conc(p, j, b, g)?, &l.contract(a)?)?;
    let t4 = pair(&concomitant_with(l, &jl, j, a, b)?, &p.contract(g)?)?;
    let rhs = &(&(&t1 + &t2) - &t3) + &t4;
    Ok(Residual::Scalar(&lhs - &rhs))
}

/// Evaluates a registered identity on the given inputs; the report's
/// residual is left side minus right side.
pub fn verify_identity<C: Coeff>(name: &str, inputs: &IdentityInputs<C>) -> Result<CheckReport> {
    let c = Ctx { name, inputs };
    let residual = match name {
        "eq2" => eq2(&c),
        "lemma_bivec" => lemma_bivec(&c),
        "eq3" => eq3(&c),
        "lemma_vec" => lemma_vec(&c),
        "eq4" => eq4(&c),
        "lemma_nij" => lemma_nij(&c),
        "eq5" => eq5(&c),
        "eq6" => eq6(&c),
        "eq7" => eq7(&c),
        "eq8" => eq8(&c),
        _ => return Err(Error::UnknownIdentity(name.to_string())),
    }?;
    Ok(run_check(name, |r| {
        let lines = match residual {
            Residual::Scalar(s) => super::scalar_residual("left − right", &s),
            Residual::Vector(v) => v.residuals("left − right"),
        };
        r.clause(name, lines);
        Ok(())
    }))
}
