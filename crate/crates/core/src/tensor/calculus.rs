use super::alternating::{DifferentialForm, MultivectorField};
use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::scalar::ScalarField;

/// `df`.
pub fn differential<C: Coeff>(f: &ScalarField<C>) -> DifferentialForm<C> {
    let chart = f.chart();
    let comps = (0..chart.dim()).map(|i| f.d(i)).collect();
    DifferentialForm::from_vec(chart, comps).expect("components live on the chart")
}

/// `X(f) = ⟨df, X⟩`.
pub fn apply_vector<C: Coeff>(x: &MultivectorField<C>, f: &ScalarField<C>) -> Result<ScalarField<C>> {
    expect_degree(x.degree(), 1)?;
    x.ensure_chart(f.chart())?;
    let chart = f.chart();
    Ok(x.as_slice().iter().enumerate().fold(ScalarField::zero(chart), |acc, (i, xi)| {
        if xi.is_zero() {
            acc
        } else {
            &acc + &(xi * &f.d(i))
        }
    }))
}

pub fn exterior_derivative<C: Coeff>(omega: &DifferentialForm<C>) -> DifferentialForm<C> {
    let chart = omega.chart();
    let mut out = DifferentialForm::zero(chart, omega.degree() + 1);
    for j in 0..chart.dim() {
        let dj = omega.partial(j);
        if dj.is_zero() {
            continue;
        }
        let dxj = DifferentialForm::basis(chart, &[j]).expect("index in range");
        out = &out + &dxj.wedge(&dj).expect("same chart");
    }
    out
}

/// `i_X ω`.
pub fn interior_product<C: Coeff>(x: &MultivectorField<C>, omega: &DifferentialForm<C>) -> Result<DifferentialForm<C>> {
    if omega.degree() == 0 {
        return Err(Error::DegreeMismatch { expected: 1, found: 0 });
    }
    omega.contract(x)
}

fn expect_degree(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { expected, found })
    }
}

/// Sum over coordinates of `(i_{e^k} A) ∧ ∂_k B`, where `e^k` is the dual basis.
fn contract_then_derive<C: Coeff>(a: &MultivectorField<C>, b: &MultivectorField<C>) -> MultivectorField<C> {
    let chart = a.chart();
    let mut out = MultivectorField::zero(chart, a.degree() + b.degree() - 1);
    for k in 0..chart.dim() {
        let dk = b.partial(k);
        if dk.is_zero() {
            continue;
        }
        let ek = DifferentialForm::basis(chart, &[k]).expect("index in range");
        let ik = a.contract(&ek).expect("degree at least one");
        if ik.is_zero() {
            continue;
        }
        out = &out + &ik.wedge(&dk).expect("same chart");
    }
    out
}

fn sign(parity: usize) -> i64 {
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Degree-dependent sign that fixes the bracket normalization.
fn weight(p: usize) -> i64 {
    if p == 3 {
        -1
    } else {
        1
    }
}

/// The Schouten–Nijenhuis bracket of a p-vector and a q-vector.
///
/// In coordinates it is `ε·([A,B]₀)` where
/// `[A,B]₀ = (−1)^{p−1} Σ_k i_{dx^k}A ∧ ∂_k B − (−1)^{p(q−1)} Σ_k i_{dx^k}B ∧ ∂_k A`
/// and `ε = w(p)·w(q)·w(p+q−1)` with `w(3) = −1`, `w = 1` otherwise. The
/// factor `ε` flips the sign of trivector-valued brackets, which makes
/// `[Λ,Λ] = 2E∧Λ` the Jacobi condition under the determinant pairing while
/// keeping `[X,Y]` the Lie bracket and `[Λ,f] = −Λ(df)`.
pub fn schouten_bracket<C: Coeff>(a: &MultivectorField<C>, b: &MultivectorField<C>) -> Result<MultivectorField<C>> {
    a.ensure_chart(b.chart())?;
    let (p, q) = (a.degree(), b.degree());
    if p + q == 0 {
        return Err(Error::DegreeMismatch { expected: 1, found: 0 });
    }
    let mut out = MultivectorField::zero(a.chart(), p + q - 1);
    if p >= 1 {
        let t = contract_then_derive(a, b);
        out = if sign(p - 1) < 0 { &out - &t } else { &out + &t };
    }
    if q >= 1 {
        let t = contract_then_derive(b, a);
        out = if sign(p * (q + 1)) < 0 { &out + &t } else { &out - &t };
    }
    let eps = weight(p) * weight(q) * weight(p + q - 1);
    Ok(if eps < 0 { out.neg() } else { out })
}

/// Lie bracket of vector fields, `[X,Y]^i = X(Y^i) − Y(X^i)`.
pub fn lie_bracket<C: Coeff>(x: &MultivectorField<C>, y: &MultivectorField<C>) -> Result<MultivectorField<C>> {
    expect_degree(x.degree(), 1)?;
    expect_degree(y.degree(), 1)?;
    x.ensure_chart(y.chart())?;
    let chart = x.chart();
    let comps = (0..chart.dim())
        .map(|i| Ok(&apply_vector(x, &y.as_slice()[i])? - &apply_vector(y, &x.as_slice()[i])?))
        .collect::<Result<Vec<_>>>()?;
    MultivectorField::from_vec(chart, comps)
}

/// `L_X T` for scalars, forms (Cartan formula) and multivectors (`[X, T]`).
pub trait LieDerivative<C: Coeff>: Sized {
    fn lie_derivative(&self, x: &MultivectorField<C>) -> Result<Self>;
}

impl<C: Coeff> LieDerivative<C> for ScalarField<C> {
    fn lie_derivative(&self, x: &MultivectorField<C>) -> Result<Self> {
        apply_vector(x, self)
    }
}

impl<C: Coeff> LieDerivative<C> for DifferentialForm<C> {
    fn lie_derivative(&self, x: &MultivectorField<C>) -> Result<Self> {
        expect_degree(x.degree(), 1)?;
        x.ensure_chart(self.chart())?;
        let d_then_i = exterior_derivative(self).contract(x)?;
        if self.degree() == 0 {
            return Ok(d_then_i);
        }
        Ok(&d_then_i + &exterior_derivative(&self.contract(x)?))
    }
}

impl<C: Coeff> LieDerivative<C> for MultivectorField<C> {
    fn lie_derivative(&self, x: &MultivectorField<C>) -> Result<Self> {
        expect_degree(x.degree(), 1)?;
        schouten_bracket(x, self)
    }
}

pub fn lie_derivative<C: Coeff, T: LieDerivative<C>>(x: &MultivectorField<C>, t: &T) -> Result<T> {
    t.lie_derivative(x)
}
