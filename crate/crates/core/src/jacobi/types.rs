use std::sync::Arc;

use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::scalar::{Chart, ScalarField};
use crate::tensor::{pair, DifferentialForm, EndomorphismField, MultivectorField};

fn expect_degree(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { expected, found })
    }
}

fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

/// A bivector `Λ` and a vector field `E` on one chart. Whether the pair is
/// a Jacobi structure is decided by [`super::is_jacobi`].
#[derive(Clone, Debug)]
pub struct JacobiPair<C> {
    lambda: MultivectorField<C>,
    e: MultivectorField<C>,
}

impl<C: Coeff> JacobiPair<C> {
    pub fn new(lambda: MultivectorField<C>, e: MultivectorField<C>) -> Result<Self> {
        expect_degree(lambda.degree(), 2)?;
        expect_degree(e.degree(), 1)?;
        same_chart(lambda.chart(), e.chart())?;
        Ok(JacobiPair { lambda, e })
    }

    /// `(π, 0)`.
    pub fn poisson(pi: MultivectorField<C>) -> Result<Self> {
        let e = MultivectorField::zero(pi.chart(), 1);
        Self::new(pi, e)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.lambda.chart()
    }

    pub fn lambda(&self) -> &MultivectorField<C> {
        &self.lambda
    }

    pub fn e(&self) -> &MultivectorField<C> {
        &self.e
    }
}

/// A section `(α, f)` of `T*M ⊕ ℝ`.
#[derive(Clone, Debug)]
pub struct SectionPair<C> {
    pub alpha: DifferentialForm<C>,
    pub f: ScalarField<C>,
}

impl<C: Coeff> SectionPair<C> {
    pub fn new(alpha: DifferentialForm<C>, f: ScalarField<C>) -> Result<Self> {
        expect_degree(alpha.degree(), 1)?;
        same_chart(alpha.chart(), f.chart())?;
        Ok(SectionPair { alpha, f })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        SectionPair { alpha: DifferentialForm::zero(chart, 1), f: ScalarField::zero(chart) }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.f.is_zero()
    }

    pub fn residuals(&self, prefix: &str) -> Vec<String> {
        let mut out = self.alpha.residuals(&format!("{prefix} form"));
        if !self.f.is_zero() {
            out.push(format!("{prefix} function: {}", self.f));
        }
        out
    }
}

/// A section `(X, f)` of `TM ⊕ ℝ`.
#[derive(Clone, Debug)]
pub struct FieldPair<C> {
    pub x: MultivectorField<C>,
    pub f: ScalarField<C>,
}

impl<C: Coeff> FieldPair<C> {
    pub fn new(x: MultivectorField<C>, f: ScalarField<C>) -> Result<Self> {
        expect_degree(x.degree(), 1)?;
        same_chart(x.chart(), f.chart())?;
        Ok(FieldPair { x, f })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        FieldPair { x: MultivectorField::zero(chart, 1), f: ScalarField::zero(chart) }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(FieldPair { x: self.x.try_add(&other.x)?, f: self.f.try_add(&other.f)? })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(FieldPair { x: self.x.try_sub(&other.x)?, f: self.f.try_sub(&other.f)? })
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.f.is_zero()
    }

    pub fn residuals(&self, prefix: &str) -> Vec<String> {
        let mut out = self.x.residuals(&format!("{prefix} vector"));
        if !self.f.is_zero() {
            out.push(format!("{prefix} function: {}", self.f));
        }
        out
    }
}

/// `𝒥(X, f) = (JX + fX₀, i_X α₀ + fφ₀)` on `TM ⊕ ℝ`.
#[derive(Clone, Debug)]
pub struct RecursionOperator<C> {
    j: EndomorphismField<C>,
    x0: MultivectorField<C>,
    alpha0: DifferentialForm<C>,
    phi0: ScalarField<C>,
}

impl<C: Coeff> RecursionOperator<C> {
    pub fn new(
        j: EndomorphismField<C>,
        x0: MultivectorField<C>,
        alpha0: DifferentialForm<C>,
        phi0: ScalarField<C>,
    ) -> Result<Self> {
        expect_degree(x0.degree(), 1)?;
        expect_degree(alpha0.degree(), 1)?;
        same_chart(j.chart(), x0.chart())?;
        same_chart(j.chart(), alpha0.chart())?;
        same_chart(j.chart(), phi0.chart())?;
        Ok(RecursionOperator { j, x0, alpha0, phi0 })
    }

    /// `(Id, 0, 0, 1)`.
    pub fn identity(chart: &Arc<Chart>) -> Self {
        RecursionOperator {
            j: EndomorphismField::identity(chart),
            x0: MultivectorField::zero(chart, 1),
            alpha0: DifferentialForm::zero(chart, 1),
            phi0: ScalarField::one(chart),
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.j.chart()
    }

    pub fn j(&self) -> &EndomorphismField<C> {
        &self.j
    }

    pub fn x0(&self) -> &MultivectorField<C> {
        &self.x0
    }

    pub fn alpha0(&self) -> &DifferentialForm<C> {
        &self.alpha0
    }

    pub fn phi0(&self) -> &ScalarField<C> {
        &self.phi0
    }

    pub fn apply(&self, s: &FieldPair<C>) -> Result<FieldPair<C>> {
        let x = self.j.apply(&s.x)?.try_add(&self.x0.scale(&s.f)?)?;
        let f = pair(&self.alpha0, &s.x)?.try_add(&s.f.try_mul(&self.phi0)?)?;
        Ok(FieldPair { x, f })
    }

    /// `ᵗ𝒥(β, g) = (ᵗJβ + gα₀, i_{X₀}β + gφ₀)`.
    pub fn transpose_apply(&self, s: &SectionPair<C>) -> Result<SectionPair<C>> {
        let alpha = self.j.transpose_apply(&s.alpha)?.try_add(&self.alpha0.scale(&s.f)?)?;
        let f = pair(&s.alpha, &self.x0)?.try_add(&s.f.try_mul(&self.phi0)?)?;
        Ok(SectionPair { alpha, f })
    }
}

macro_rules! field_eq {
    ($ty:ident { $($field:ident),* }) => {
        impl<C: Coeff> PartialEq for $ty<C> {
            fn eq(&self, other: &Self) -> bool {
                $(self.$field == other.$field)&&*
            }
        }
    };
}

field_eq!(JacobiPair { lambda, e });
field_eq!(SectionPair { alpha, f });
field_eq!(FieldPair { x, f });
field_eq!(RecursionOperator { j, x0, alpha0, phi0 });
