use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;



use super::chart::Chart;
use super::exppoly::{ExpPoly, Monomial};
use crate::error::{Error, Result};
use crate::num::Coeff;

/// An element of the fraction field of exponential polynomials on a chart.
///
/// Stored as `num / den` with the denominator's leading term normalized to
/// coefficient 1 and frequency 0, and with common powers of the coordinates
/// cancelled. Equality is decided by cross-multiplication, so two equal
/// values may still differ in representation.
#[derive(Clone, Debug)]
pub struct ScalarField<C> {
    chart: Arc<Chart>,
    num: ExpPoly<C>,
    den: ExpPoly<C>,
}

impl<C: Coeff> ScalarField<C> {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        let n = chart.dim();
        ScalarField { chart: chart.clone(), num: ExpPoly::zero(n), den: ExpPoly::one(n) }
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Self::constant(chart, C::one())
    }

    pub fn constant(chart: &Arc<Chart>, value: C) -> Self {
        let n = chart.dim();
        ScalarField { chart: chart.clone(), num: ExpPoly::constant(n, value), den: ExpPoly::one(n) }
    }

    pub fn int(chart: &Arc<Chart>, value: i64) -> Self {
        Self::constant(chart, C::from_int(value))
    }

    /// The coordinate function `x_i` (0-based index).
    pub fn coord(chart: &Arc<Chart>, i: usize) -> Self {
        Self::from_poly(chart, ExpPoly::var(chart.dim(), i))
    }

    pub fn coords(chart: &Arc<Chart>) -> Vec<Self> {
        (0..chart.dim()).map(|i| Self::coord(chart, i)).collect()
    }

    /// `exp(Σ c_i x_i)`.
    pub fn exp_linear(chart: &Arc<Chart>, freq: Vec<C>) -> Self {
        assert_eq!(freq.len(), chart.dim());
        Self::from_poly(chart, ExpPoly::exp_linear(freq))
    }

    pub fn from_poly(chart: &Arc<Chart>, num: ExpPoly<C>) -> Self {
        let den = ExpPoly::one(chart.dim());
        ScalarField { chart: chart.clone(), num, den }
    }

    pub fn from_parts(chart: &Arc<Chart>, num: ExpPoly<C>, den: ExpPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(chart.clone(), num, den))
    }

    fn canonical(chart: Arc<Chart>, num: ExpPoly<C>, den: ExpPoly<C>) -> Self {
        let n = chart.dim();
        if num.is_zero() {
            return ScalarField { chart, num, den: ExpPoly::one(n) };
        }
        if den.is_one() {
            return ScalarField { chart, num, den };
        }
        let (lead_mono, lead_coeff) = den.leading().expect("nonzero denominator");
        let norm = Monomial { freq: lead_mono.freq.iter().map(|c| -c.clone()).collect(), exps: vec![0; n] };
        let inv = C::one() / lead_coeff.clone();
        let mut num = num.mul_term(&norm, &inv);
        let mut den = den.mul_term(&norm, &inv);
        let common: Vec<u32> = match (num.min_exponents(), den.min_exponents()) {
            (Some(a), Some(b)) => a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect(),
            _ => vec![0; n],
        };
        if common.iter().any(|&e| e > 0) {
            num = num.div_monomial(&common);
            den = den.div_monomial(&common);
        }
        // num = q·den collapses to a constant
        if num.len() == den.len() {
            let (_, nl) = num.leading().unwrap();
            let q = nl.clone();
            if num == den.scale(&q) {
                return ScalarField { chart, num: ExpPoly::constant(n, q), den: ExpPoly::one(n) };
            }
        }
        ScalarField { chart, num, den }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn numerator(&self) -> &ExpPoly<C> {
        &self.num
    }

    pub fn denominator(&self) -> &ExpPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn same_chart(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.chart, &other.chart) || self.chart == other.chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.den == other.den {
            return Ok(Self::canonical(self.chart.clone(), self.num.add(&other.num), self.den.clone()));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Ok(Self::canonical(self.chart.clone(), num, self.den.mul(&other.den)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.chart));
        }
        if self.den.is_one() && other.den.is_one() {
            let num = self.num.mul(&other.num);
            return Ok(ScalarField { chart: self.chart.clone(), num, den: self.den.clone() });
        }
        Ok(Self::canonical(self.chart.clone(), self.num.mul(&other.num), self.den.mul(&other.den)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.chart.clone(), self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(&self.chart).try_div(self)
    }

    fn neg_ref(&self) -> Self {
        ScalarField { chart: self.chart.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::canonical(self.chart.clone(), self.num.scale(k), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::canonical(self.chart.clone(), self.num.pow(e), self.den.pow(e))
    }

    /// `∂/∂x_i` with a 0-based index.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        self.chart.check_index(i)?;
        Ok(self.d(i))
    }

    pub(crate) fn d(&self, i: usize) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        if self.den.is_one() {
            return ScalarField { chart: self.chart.clone(), num: self.num.derivative(i), den: self.den.clone() };
        }
        let num = self.num.derivative(i).mul(&self.den).sub(&self.num.mul(&self.den.derivative(i)));
        Self::canonical(self.chart.clone(), num, self.den.mul(&self.den))
    }

    /// Double-precision value at a point; diagnostics only.
    pub fn eval_approx(&self, point: &[C]) -> Result<f64> {
        if point.len() != self.chart.dim() {
            return Err(Error::IndexOutOfRange { index: point.len(), dim: self.chart.dim() });
        }
        let pt: Vec<f64> = point.iter().map(Coeff::approx).collect();
        let den = self.den.eval_f64(&pt);
        if den == 0.0 {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval_f64(&pt) / den)
    }

    /// The same value viewed on `chart`, which must extend this chart by
    /// coordinates appended at the end.
    pub fn lift(&self, chart: &Arc<Chart>) -> Result<Self> {
        let n = self.chart.dim();
        if chart.dim() < n || chart.names()[..n] != *self.chart.names() {
            return Err(Error::ChartMismatch);
        }
        let extra = chart.dim() - n;
        Ok(ScalarField { chart: chart.clone(), num: self.num.extend(extra), den: self.den.extend(extra) })
    }

    /// Substitutes `x_i = 0`, giving a value on `chart` (this chart without `x_i`).
    pub fn restrict_zero(&self, i: usize, chart: &Arc<Chart>) -> Result<Self> {
        self.chart.check_index(i)?;
        if chart.dim() + 1 != self.chart.dim() {
            return Err(Error::ChartMismatch);
        }
        let den = self.den.restrict_zero(i);
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(Self::canonical(chart.clone(), self.num.restrict_zero(i), den))
    }

    /// Moves the value to `chart`, sending coordinate `k` to `map[k]`.
    pub fn remap(&self, map: &[usize], chart: &Arc<Chart>) -> Self {
        let n = chart.dim();
        Self::canonical(chart.clone(), self.num.remap(map, n), self.den.remap(map, n))
    }

    pub fn to_expr(&self) -> String {
        let names = self.chart.names();
        let mut out = String::new();
        if self.den.is_one() {
            self.num.write_expr(names, &mut out);
        } else {
            out.push('(');
            self.num.write_expr(names, &mut out);
            out.push_str(")/(");
            self.den.write_expr(names, &mut out);
            out.push(')');
        }
        out
    }
}

impl<C: Coeff> PartialEq for ScalarField<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.chart != other.chart {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<C: Coeff> Eq for ScalarField<C> {}

impl<C: Coeff> fmt::Display for ScalarField<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<C: Coeff> $trait<&ScalarField<C>> for &ScalarField<C> {
            type Output = ScalarField<C>;
            fn $method(self, rhs: &ScalarField<C>) -> ScalarField<C> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Coeff> $trait<ScalarField<C>> for ScalarField<C> {
            type Output = ScalarField<C>;
            fn $method(self, rhs: ScalarField<C>) -> ScalarField<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coeff> $trait<&ScalarField<C>> for ScalarField<C> {
            type Output = ScalarField<C>;
            fn $method(self, rhs: &ScalarField<C>) -> ScalarField<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Coeff> $trait<ScalarField<C>> for &ScalarField<C> {
            type Output = ScalarField<C>;
            fn $method(self, rhs: ScalarField<C>) -> ScalarField<C> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl<C: Coeff> Neg for &ScalarField<C> {
    type Output = ScalarField<C>;
    fn neg(self) -> ScalarField<C> {
        self.neg_ref()
    }
}

impl<C: Coeff> Neg for ScalarField<C> {
    type Output = ScalarField<C>;
    fn neg(self) -> ScalarField<C> {
        self.neg_ref()
    }
}

/// Sums a nonempty-chart iterator of fields, starting from zero on `chart`.
pub fn sum<C: Coeff, I>(chart: &Arc<Chart>, terms: I) -> ScalarField<C>
where
    I: IntoIterator<Item = ScalarField<C>>,
{
    terms.into_iter().fold(ScalarField::zero(chart), |acc, t| &acc + &t)
}

#[allow(dead_code)]
fn _assert_send_sync<C: Coeff>() {
    fn is<T: Send + Sync>() {}
    is::<ScalarField<C>>();
}
