use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use super::index::{binomial, combinations, label, rank, sort_sign};
use crate::error::{Error, Result};
use crate::num::Coeff;
use crate::scalar::{Chart, ScalarField};

/// Marks an alternating field as contravariant ([`Up`]) or covariant ([`Down`]).
pub trait Variance: Copy + fmt::Debug + Send + Sync + 'static {
    type Dual: Variance<Dual = Self>;
    const KIND: &'static str;
    /// Prefix of basis elements in printed output.
    const BASIS: &'static str;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Up;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Down;

impl Variance for Up {
    type Dual = Down;
    const KIND: &'static str = "multivector";
    const BASIS: &'static str = "∂";
}

impl Variance for Down {
    type Dual = Up;
    const KIND: &'static str = "form";
    const BASIS: &'static str = "dx";
}

/// A totally antisymmetric field of a fixed degree, one component per
/// strictly increasing index tuple (0-based) in lexicographic order.
#[derive(Clone, Debug)]
pub struct Alternating<C, V> {
    chart: Arc<Chart>,
    degree: usize,
    comps: Vec<ScalarField<C>>,
    _variance: PhantomData<V>,
}

pub type MultivectorField<C> = Alternating<C, Up>;
pub type DifferentialForm<C> = Alternating<C, Down>;

impl<C: Coeff, V: Variance> Alternating<C, V> {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        let count = binomial(chart.dim(), degree);
        Alternating {
            chart: chart.clone(),
            degree,
            comps: vec![ScalarField::zero(chart); count],
            _variance: PhantomData,
        }
    }

    /// A degree-0 field.
    pub fn scalar(f: ScalarField<C>) -> Self {
        Alternating { chart: f.chart().clone(), degree: 0, comps: vec![f], _variance: PhantomData }
    }

    /// A degree-1 field from its `n` components.
    pub fn from_vec(chart: &Arc<Chart>, comps: Vec<ScalarField<C>>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::DegreeMismatch { expected: chart.dim(), found: comps.len() });
        }
        for c in &comps {
            if c.chart() != chart {
                return Err(Error::ChartMismatch);
            }
        }
        Ok(Alternating { chart: chart.clone(), degree: 1, comps, _variance: PhantomData })
    }

    /// Builds a field from `(increasing index tuple, value)` pairs; omitted
    /// components are zero and repeated tuples are summed.
    pub fn from_components<I>(chart: &Arc<Chart>, degree: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, ScalarField<C>)>,
    {
        let mut out = Self::zero(chart, degree);
        for (idx, value) in entries {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: idx.len() });
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidIndex(label(&idx)));
            }
            if let Some(&last) = idx.last() {
                chart.check_index(last)?;
            }
            if value.chart() != chart {
                return Err(Error::ChartMismatch);
            }
            let r = rank(chart.dim(), &idx);
            out.comps[r] = &out.comps[r] + &value;
        }
        Ok(out)
    }

    /// `dx^{i1}∧…` or `∂_{i1}∧…` with unit coefficient; indices in any order.
    pub fn basis(chart: &Arc<Chart>, idx: &[usize]) -> Result<Self> {
        let (sorted, sign) = sort_sign(idx).ok_or_else(|| Error::InvalidIndex(label(idx)))?;
        for &i in &sorted {
            chart.check_index(i)?;
        }
        Self::from_components(chart, idx.len(), [(sorted, ScalarField::int(chart, sign))])
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Component at an index tuple in any order; repeated indices give 0.
    pub fn component(&self, idx: &[usize]) -> ScalarField<C> {
        assert_eq!(idx.len(), self.degree, "index tuple length must equal the degree");
        match sort_sign(idx) {
            None => ScalarField::zero(&self.chart),
            Some((sorted, sign)) => {
                let c = &self.comps[rank(self.dim(), &sorted)];
                if sign < 0 {
                    -c
                } else {
                    c.clone()
                }
            }
        }
    }

    /// The value of a degree-0 field.
    pub fn as_scalar(&self) -> Result<&ScalarField<C>> {
        if self.degree != 0 {
            return Err(Error::DegreeMismatch { expected: 0, found: self.degree });
        }
        Ok(&self.comps[0])
    }

    /// Components of a degree-1 field.
    pub fn as_slice(&self) -> &[ScalarField<C>] {
        &self.comps
    }

    /// `(increasing index tuple, value)` for every stored component.
    pub fn components(&self) -> impl Iterator<Item = (Vec<usize>, &ScalarField<C>)> {
        combinations(self.dim(), self.degree).into_iter().zip(self.comps.iter())
    }

    pub fn nonzero_components(&self) -> impl Iterator<Item = (Vec<usize>, &ScalarField<C>)> {
        self.components().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarField::is_zero)
    }

    /// One line `"{prefix} (i,j,…): expr"` per nonzero component.
    pub fn residuals(&self, prefix: &str) -> Vec<String> {
        self.nonzero_components()
            .map(|(idx, c)| {
                if self.degree == 0 {
                    format!("{prefix}: {c}")
                } else {
                    format!("{prefix} {}: {c}", label(&idx))
                }
            })
            .collect()
    }

    pub(crate) fn ensure_chart(&self, chart: &Arc<Chart>) -> Result<()> {
        if Arc::ptr_eq(&self.chart, chart) || *self.chart == **chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    fn ensure_same(&self, other: &Self) -> Result<()> {
        self.ensure_chart(&other.chart)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&ScalarField<C>) -> ScalarField<C>) -> Self {
        Alternating {
            chart: self.chart.clone(),
            degree: self.degree,
            comps: self.comps.iter().map(f).collect(),
            _variance: PhantomData,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&ScalarField<C>, &ScalarField<C>) -> ScalarField<C>) -> Result<Self> {
        self.ensure_same(other)?;
        Ok(Alternating {
            chart: self.chart.clone(),
            degree: self.degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
            _variance: PhantomData,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    /// Multiplies every component by the scalar field `f`.
    pub fn scale(&self, f: &ScalarField<C>) -> Result<Self> {
        self.ensure_chart(f.chart())?;
        Ok(self.map(|c| c * f))
    }

    pub fn scale_const(&self, k: &C) -> Self {
        self.map(|c| c.scale(k))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.ensure_chart(&other.chart)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(&self.chart, degree);
        if degree > self.dim() {
            return Ok(out);
        }
        let n = self.dim();
        for (i, a) in self.nonzero_components() {
            for (j, b) in other.nonzero_components() {
                let merged: Vec<usize> = i.iter().chain(&j).copied().collect();
                if let Some((sorted, sign)) = sort_sign(&merged) {
                    let r = rank(n, &sorted);
                    let prod = a * b;
                    out.comps[r] = if sign < 0 { &out.comps[r] - &prod } else { &out.comps[r] + &prod };
                }
            }
        }
        Ok(out)
    }

    /// Contraction of a degree-1 dual field into the first slot:
    /// `(i_a A)(b_2, …) = A(a, b_2, …)`.
    pub fn contract(&self, a: &Alternating<C, V::Dual>) -> Result<Self> {
        self.ensure_chart(&a.chart)?;
        if a.degree != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: a.degree });
        }
        if self.degree == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let n = self.dim();
        let mut out = Self::zero(&self.chart, self.degree - 1);
        for (idx, c) in self.nonzero_components() {
            for (k, &i) in idx.iter().enumerate() {
                let ai = &a.comps[i];
                if ai.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                let r = rank(n, &rest);
                let term = c * ai;
                out.comps[r] = if k % 2 == 1 { &out.comps[r] - &term } else { &out.comps[r] + &term };
            }
        }
        Ok(out)
    }

    /// Full evaluation `A(a_1, …, a_p)` on degree-1 dual fields.
    pub fn evaluate(&self, args: &[&Alternating<C, V::Dual>]) -> Result<ScalarField<C>> {
        if args.len() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: args.len() });
        }
        let mut cur = self.clone();
        for a in args {
            cur = cur.contract(a)?;
        }
        Ok(cur.comps[0].clone())
    }

    /// Componentwise `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        self.map(|c| c.d(i))
    }

    /// Moves the field to `chart`, which extends this chart by trailing coordinates.
    pub fn lift(&self, chart: &Arc<Chart>) -> Result<Self> {
        let mut out = Self::zero(chart, self.degree);
        for (idx, c) in self.nonzero_components() {
            let r = rank(chart.dim(), &idx);
            out.comps[r] = c.lift(chart)?;
        }
        Ok(out)
    }
}

/// The natural pairing `⟨ω, A⟩` of a q-form with a q-vector (determinant
/// convention, so `⟨dx^I, ∂_I⟩ = 1` for increasing `I`).
pub fn pair<C: Coeff>(omega: &DifferentialForm<C>, a: &MultivectorField<C>) -> Result<ScalarField<C>> {
    a.ensure_chart(&omega.chart)?;
    if omega.degree != a.degree {
        return Err(Error::DegreeMismatch { expected: omega.degree, found: a.degree });
    }
    Ok(omega.comps.iter().zip(&a.comps).fold(ScalarField::zero(&a.chart), |acc, (w, v)| &acc + &(w * v)))
}

impl<C: Coeff, V: Variance> PartialEq for Alternating<C, V> {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart && self.degree == other.degree && self.comps == other.comps
    }
}

impl<C: Coeff, V: Variance> fmt::Display for Alternating<C, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", self.comps[0]);
        }
        let parts: Vec<String> = self
            .nonzero_components()
            .map(|(idx, c)| {
                let basis: Vec<String> = idx.iter().map(|i| format!("{}{}", V::BASIS, self.chart.name(*i))).collect();
                format!("({c})*{}", basis.join("^"))
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

macro_rules! field_ops {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<C: Coeff, V: Variance> std::ops::$trait<&Alternating<C, V>> for &Alternating<C, V> {
            type Output = Alternating<C, V>;
            fn $method(self, rhs: &Alternating<C, V>) -> Alternating<C, V> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Coeff, V: Variance> std::ops::$trait<Alternating<C, V>> for Alternating<C, V> {
            type Output = Alternating<C, V>;
            fn $method(self, rhs: Alternating<C, V>) -> Alternating<C, V> {
                (&self).$method(&rhs)
            }
        }
    };
}

field_ops!(Add, add, try_add);
field_ops!(Sub, sub, try_sub);

impl<C: Coeff, V: Variance> std::ops::Neg for &Alternating<C, V> {
    type Output = Alternating<C, V>;
    fn neg(self) -> Alternating<C, V> {
        Alternating::neg(self)
    }
}
