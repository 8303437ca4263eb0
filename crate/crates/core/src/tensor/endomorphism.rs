use std::fmt;
use std::sync::Arc;

use super::alternating::{DifferentialForm, MultivectorField};
use super::calculus::lie_bracket;
use super::index::label;
use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::scalar::{Chart, ScalarField};

/// A (1,1)-tensor field: `J(∂_j) = Σ_i J[i][j] ∂_i`.
#[derive(Clone, Debug)]
pub struct EndomorphismField<C> {
    chart: Arc<Chart>,
    rows: Vec<Vec<ScalarField<C>>>,
}

impl<C: Coeff> EndomorphismField<C> {
    pub fn from_rows(chart: &Arc<Chart>, rows: Vec<Vec<ScalarField<C>>>) -> Result<Self> {
        let n = chart.dim();
        if rows.len() != n {
            return Err(Error::DegreeMismatch { expected: n, found: rows.len() });
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DegreeMismatch { expected: n, found: row.len() });
            }
            if row.iter().any(|c| c.chart() != chart) {
                return Err(Error::ChartMismatch);
            }
        }
        Ok(EndomorphismField { chart: chart.clone(), rows })
    }

    pub fn from_fn(chart: &Arc<Chart>, f: impl Fn(usize, usize) -> ScalarField<C>) -> Self {
        let n = chart.dim();
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        EndomorphismField { chart: chart.clone(), rows }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Self::from_fn(chart, |_, _| ScalarField::zero(chart))
    }

    /// `f·Id`.
    pub fn scalar(f: &ScalarField<C>) -> Self {
        let chart = f.chart();
        Self::from_fn(chart, |i, j| if i == j { f.clone() } else { ScalarField::zero(chart) })
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        Self::scalar(&ScalarField::one(chart))
    }

    pub fn diagonal(chart: &Arc<Chart>, entries: Vec<ScalarField<C>>) -> Result<Self> {
        if entries.len() != chart.dim() {
            return Err(Error::DegreeMismatch { expected: chart.dim(), found: entries.len() });
        }
        Ok(Self::from_fn(chart, |i, j| if i == j { entries[i].clone() } else { ScalarField::zero(chart) }))
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarField<C> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<ScalarField<C>>] {
        &self.rows
    }

    fn ensure_chart(&self, chart: &Arc<Chart>) -> Result<()> {
        if Arc::ptr_eq(&self.chart, chart) || *self.chart == **chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    /// `(JX)^i = Σ_j J[i][j] X^j`.
    pub fn apply(&self, x: &MultivectorField<C>) -> Result<MultivectorField<C>> {
        self.ensure_chart(x.chart())?;
        if x.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: x.degree() });
        }
        let xs = x.as_slice();
        let comps = self.rows.iter().map(|row| dot(&self.chart, row.iter(), xs.iter())).collect();
        MultivectorField::from_vec(&self.chart, comps)
    }

    /// `(ᵗJα)_j = Σ_i J[i][j] α_i`.
    pub fn transpose_apply(&self, alpha: &DifferentialForm<C>) -> Result<DifferentialForm<C>> {
        self.ensure_chart(alpha.chart())?;
        if alpha.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: alpha.degree() });
        }
        let a = alpha.as_slice();
        let n = self.dim();
        let comps = (0..n).map(|j| dot(&self.chart, (0..n).map(|i| &self.rows[i][j]), a.iter())).collect();
        DifferentialForm::from_vec(&self.chart, comps)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.chart, |i, j| self.rows[j][i].clone())
    }

    /// `J∘K`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ensure_chart(&other.chart)?;
        let n = self.dim();
        Ok(Self::from_fn(&self.chart, |i, j| {
            dot(&self.chart, self.rows[i].iter(), (0..n).map(|k| &other.rows[k][j]))
        }))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(&self.chart);
        for _ in 0..k {
            acc = self.compose(&acc).expect("same chart");
        }
        acc
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ensure_chart(&other.chart)?;
        Ok(Self::from_fn(&self.chart, |i, j| &self.rows[i][j] + &other.rows[i][j]))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ensure_chart(&other.chart)?;
        Ok(Self::from_fn(&self.chart, |i, j| &self.rows[i][j] - &other.rows[i][j]))
    }

    pub fn scale(&self, f: &ScalarField<C>) -> Result<Self> {
        self.ensure_chart(f.chart())?;
        Ok(Self::from_fn(&self.chart, |i, j| &self.rows[i][j] * f))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(ScalarField::is_zero)
    }

    /// The bivector `JΛ` with `(JΛ)α = J(Λα)`, i.e. component matrix `J·L`.
    /// Fails with the nonzero entries of `J·L + (J·L)ᵀ` when `J∘Λ ≠ Λ∘ᵗJ`.
    pub fn compose_bivector(&self, lambda: &MultivectorField<C>) -> Result<MultivectorField<C>> {
        self.ensure_chart(lambda.chart())?;
        if lambda.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, found: lambda.degree() });
        }
        let l = bivector_matrix(lambda);
        let n = self.dim();
        let jl: Vec<Vec<ScalarField<C>>> = (0..n)
            .map(|i| (0..n).map(|j| dot(&self.chart, self.rows[i].iter(), (0..n).map(|k| &l[k][j]))).collect())
            .collect();
        let mut residual = Vec::new();
        for i in 0..n {
            for j in i..n {
                let sym = &jl[i][j] + &jl[j][i];
                if !sym.is_zero() {
                    residual.push(format!("{}: {sym}", label(&[i, j])));
                }
            }
        }
        if !residual.is_empty() {
            return Err(Error::NotABivector { residual });
        }
        let entries = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (vec![i, j], jl[i][j].clone()));
        MultivectorField::from_components(&self.chart, 2, entries.collect::<Vec<_>>())
    }

    /// `N_J(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] + J²[X,Y]`.
    pub fn nijenhuis_torsion(&self, x: &MultivectorField<C>, y: &MultivectorField<C>) -> Result<MultivectorField<C>> {
        let jx = self.apply(x)?;
        let jy = self.apply(y)?;
        let a = lie_bracket(&jx, &jy)?;
        let b = self.apply(&lie_bracket(&jx, y)?)?;
        let c = self.apply(&lie_bracket(x, &jy)?)?;
        let d = self.apply(&self.apply(&lie_bracket(x, y)?)?)?;
        Ok(&(&(&a - &b) - &c) + &d)
    }

    /// Nonzero entries as `"label (i,j): expr"` lines.
    pub fn residuals(&self, prefix: &str) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.rows[i][j].is_zero() {
                    out.push(format!("{prefix} {}: {}", label(&[i, j]), self.rows[i][j]));
                }
            }
        }
        out
    }
}

impl<C: Coeff> PartialEq for EndomorphismField<C> {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart && self.rows == other.rows
    }
}

/// The antisymmetric component matrix `L[i][j] = Λ(dx^i, dx^j)`.
pub fn bivector_matrix<C: Coeff>(lambda: &MultivectorField<C>) -> Vec<Vec<ScalarField<C>>> {
    let n = lambda.dim();
    (0..n).map(|i| (0..n).map(|j| lambda.component(&[i, j])).collect()).collect()
}

fn dot<'a, C: Coeff>(
    chart: &Arc<Chart>,
    a: impl Iterator<Item = &'a ScalarField<C>>,
    b: impl Iterator<Item = &'a ScalarField<C>>,
) -> ScalarField<C> {
    a.zip(b).fold(ScalarField::zero(chart), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            &acc + &(x * y)
        }
    })
}

impl<C: Coeff> fmt::Display for EndomorphismField<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
