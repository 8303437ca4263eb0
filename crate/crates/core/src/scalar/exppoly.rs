//! Exponential polynomials `Σ q · x^a · exp(c·x)` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::num::Coeff;

/// The product `x^a · exp(c·x)`; ordered lexicographically on `(c, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial<C> {
    pub freq: Vec<C>,
    pub exps: Vec<u32>,
}

impl<C: Coeff> Monomial<C> {
    pub fn one(nvars: usize) -> Self {
        Monomial { freq: vec![C::zero(); nvars], exps: vec![0; nvars] }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0) && self.freq.iter().all(Zero::is_zero)
    }

    fn mul(&self, other: &Self) -> Self {
        let freq = if !other.has_exp() {
            self.freq.clone()
        } else if !self.has_exp() {
            other.freq.clone()
        } else {
            self.freq.iter().zip(&other.freq).map(|(a, b)| a.clone() + b.clone()).collect()
        };
        Monomial {
            freq,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn has_exp(&self) -> bool {
        self.freq.iter().any(|c| !c.is_zero())
    }
}

use num_traits::Zero;

/// A finite sum of terms with pairwise distinct monomials and nonzero
/// coefficients. Terms are kept in a `BTreeMap`, so equal values have
/// identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial<C>, C>,
}

impl<C: Coeff> ExpPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        ExpPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, value: C) -> Self {
        Self::term(Monomial::one(nvars), value)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn term(mono: Monomial<C>, coeff: C) -> Self {
        let nvars = mono.exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        ExpPoly { nvars, terms }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut mono = Monomial::one(nvars);
        mono.exps[index] = 1;
        Self::term(mono, C::one())
    }

    /// `exp(c·x)`.
    pub fn exp_linear(freq: Vec<C>) -> Self {
        let nvars = freq.len();
        Self::term(Monomial { freq, exps: vec![0; nvars] }, C::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && {
            let (m, c) = self.terms.iter().next().unwrap();
            m.is_one() && c.is_one()
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<C>, &C)> {
        self.terms.iter()
    }

    /// Greatest term in the canonical order.
    pub fn leading(&self) -> Option<(&Monomial<C>, &C)> {
        self.terms.iter().next_back()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, mono: Monomial<C>, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExpPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        ExpPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiplies by a single term `coeff · mono`.
    pub fn mul_term(&self, mono: &Monomial<C>, coeff: &C) -> Self {
        ExpPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone() * coeff.clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `∂/∂x_i`, using `∂(x^a exp(c·x)) = (a_i x^(a-e_i) + c_i x^a) exp(c·x)`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let a = m.exps[i];
            if a > 0 {
                let mut lowered = m.clone();
                lowered.exps[i] -= 1;
                out.add_term(lowered, c.clone() * C::from_int(a as i64));
            }
            if !m.freq[i].is_zero() {
                out.add_term(m.clone(), c.clone() * m.freq[i].clone());
            }
        }
        out
    }

    /// Componentwise minimum of the monomial exponents over all terms.
    pub fn min_exponents(&self) -> Option<Vec<u32>> {
        let mut iter = self.terms.keys();
        let first = iter.next()?.exps.clone();
        Some(iter.fold(first, |acc, m| acc.iter().zip(&m.exps).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Divides every term by `x^exps`; the caller guarantees divisibility.
    pub fn div_monomial(&self, exps: &[u32]) -> Self {
        ExpPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    for (e, d) in m.exps.iter_mut().zip(exps) {
                        *e -= d;
                    }
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Appends `extra` coordinates on which the value does not depend.
    pub fn extend(&self, extra: usize) -> Self {
        ExpPoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.freq.extend(std::iter::repeat_n(C::zero(), extra));
                    m.exps.extend(std::iter::repeat_n(0, extra));
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `x_i = 0` and drops the coordinate.
    pub fn restrict_zero(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            if m.exps[i] > 0 {
                continue;
            }
            let mut m = m.clone();
            m.exps.remove(i);
            m.freq.remove(i);
            out.add_term(m, c.clone());
        }
        out
    }

    /// Reorders/embeds coordinates: old coordinate `k` becomes `map[k]` in a
    /// chart of `nvars` coordinates.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut nm: Monomial<C> = Monomial::one(nvars);
            for (k, &target) in map.iter().enumerate() {
                nm.exps[target] += m.exps[k];
                nm.freq[target] = nm.freq[target].clone() + m.freq[k].clone();
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.approx();
                for (k, x) in point.iter().enumerate() {
                    if m.exps[k] > 0 {
                        v *= x.powi(m.exps[k] as i32);
                    }
                    if !m.freq[k].is_zero() {
                        v *= (m.freq[k].approx() * x).exp();
                    }
                }
                v
            })
            .sum()
    }

    /// Writes the value in the expression grammar accepted by the parser.
    pub fn write_expr(&self, names: &[String], out: &mut String) {
        if self.terms.is_empty() {
            out.push('0');
            return;
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            write_term(&c.abs(), m, names, out);
        }
    }
}

fn write_term<C: Coeff>(mag: &C, m: &Monomial<C>, names: &[String], out: &mut String) {
    let mut factors: Vec<String> = Vec::new();
    for (k, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(names[k].clone()),
            _ => factors.push(format!("{}^{e}", names[k])),
        }
    }
    if m.has_exp() {
        let mut arg = String::new();
        write_linear(&m.freq, names, &mut arg);
        factors.push(format!("exp({arg})"));
    }
    if factors.is_empty() {
        let _ = write!(out, "{mag}");
        return;
    }
    if !mag.is_one() {
        let _ = write!(out, "{mag}*");
    }
    out.push_str(&factors.join("*"));
}

fn write_linear<C: Coeff>(freq: &[C], names: &[String], out: &mut String) {
    let mut first = true;
    for (k, c) in freq.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match (first, c.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        first = false;
        let mag = c.abs();
        if !mag.is_one() {
            let _ = write!(out, "{mag}*");
        }
        out.push_str(&names[k]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = ExpPoly<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_int(n)
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = P::var(2, 0);
        assert!(x.sub(&x).is_zero());
        let e = P::exp_linear(vec![q(1), q(0)]);
        let e_inv = P::exp_linear(vec![q(-1), q(0)]);
        assert!(e.mul(&e_inv).is_one());
    }

    #[test]
    fn derivative_of_exponential_monomial() {
        // d/dx (x^2 e^{3x}) = 2x e^{3x} + 3x^2 e^{3x}
        let mono = Monomial { freq: vec![q(3)], exps: vec![2] };
        let p = P::term(mono, q(1));
        let d = p.derivative(0);
        let expected = P::term(Monomial { freq: vec![q(3)], exps: vec![1] }, q(2))
            .add(&P::term(Monomial { freq: vec![q(3)], exps: vec![2] }, q(3)));
        assert_eq!(d, expected);
    }

    #[test]
    fn restrict_and_extend() {
        let x = P::var(2, 0);
        let t = P::var(2, 1);
        let p = x.add(&t.mul(&x)).add(&P::one(2));
        let r = p.restrict_zero(1);
        assert_eq!(r, P::var(1, 0).add(&P::one(1)));
        assert_eq!(r.extend(1), x.add(&P::one(2)));
    }

    #[test]
    fn printing() {
        let names = vec!["x".to_string(), "t".to_string()];
        let p = P::var(2, 0)
            .pow(2)
            .mul(&P::exp_linear(vec![q(0), q(-1)]))
            .add(&P::constant(2, BigRational::new(1.into(), 2.into())));
        let mut s = String::new();
        p.write_expr(&names, &mut s);
        assert_eq!(s, "1/2 + x^2*exp(-t)");
    }
}
