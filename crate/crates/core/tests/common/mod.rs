//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use jacobikit::jacobi::{jacobi_bracket, JacobiPair, SectionPair};
use jacobikit::scalar::{parse_scalar, Chart, ScalarField};
use jacobikit::tensor::{DifferentialForm, EndomorphismField, MultivectorField};
use jacobikit::Rational;

pub type S = ScalarField<Rational>;
pub type Mv = MultivectorField<Rational>;
pub type Fm = DifferentialForm<Rational>;
pub type End = EndomorphismField<Rational>;
pub type Pair = JacobiPair<Rational>;

pub fn s(text: &str, c: &Arc<Chart>) -> S {
    parse_scalar(text, c).unwrap()
}

pub fn vb(c: &Arc<Chart>, idx: &[usize]) -> Mv {
    Mv::basis(c, idx).unwrap()
}

pub fn fb(c: &Arc<Chart>, idx: &[usize]) -> Fm {
    Fm::basis(c, idx).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `⟨α, X⟩ = Σ αᵢXⁱ`.
pub fn dot(a: &Fm, x: &Mv) -> S {
    let c = a.chart();
    a.as_slice().iter().zip(x.as_slice()).fold(S::zero(c), |acc, (ai, xi)| &acc + &(ai * xi))
}

/// `X(f)` from components.
pub fn deriv(x: &Mv, f: &S) -> S {
    let c = f.chart();
    (0..c.dim()).fold(S::zero(c), |acc, k| &acc + &(&x.as_slice()[k] * &f.partial_derivative(k).unwrap()))
}

pub fn grad(f: &S) -> Fm {
    let c = f.chart();
    Fm::from_vec(c, (0..c.dim()).map(|i| f.partial_derivative(i).unwrap()).collect()).unwrap()
}

/// `Λ(α,β) = Σ Λ^{ij} αᵢ βⱼ`.
pub fn biv(l: &Mv, a: &Fm, b: &Fm) -> S {
    let c = l.chart();
    let n = c.dim();
    let mut acc = S::zero(c);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let lij = if i < j { l.component(&[i, j]) } else { -l.component(&[j, i]) };
            acc = &acc + &(&(&lij * &a.as_slice()[i]) * &b.as_slice()[j]);
        }
    }
    acc
}

/// `(Λα)^j = Σᵢ Λ^{ij} αᵢ`.
pub fn sharp(l: &Mv, a: &Fm) -> Mv {
    let c = l.chart();
    let comps = (0..c.dim()).map(|j| biv(l, a, &fb(c, &[j]))).collect();
    Mv::from_vec(c, comps).unwrap()
}

/// `(L_X β)ᵢ = X^k ∂_k βᵢ + β_k ∂ᵢ X^k`.
pub fn lie_form(x: &Mv, b: &Fm) -> Fm {
    let c = x.chart();
    let n = c.dim();
    let comps = (0..n)
        .map(|i| {
            (0..n).fold(S::zero(c), |acc, k| {
                let t1 = &x.as_slice()[k] * &b.as_slice()[i].partial_derivative(k).unwrap();
                let t2 = &b.as_slice()[k] * &x.as_slice()[k].partial_derivative(i).unwrap();
                &(&acc + &t1) + &t2
            })
        })
        .collect();
    Fm::from_vec(c, comps).unwrap()
}

/// `[X,Y]ⁱ = X(Yⁱ) − Y(Xⁱ)`.
pub fn lie_vec(x: &Mv, y: &Mv) -> Mv {
    let c = x.chart();
    let comps = (0..c.dim()).map(|i| &deriv(x, &y.as_slice()[i]) - &deriv(y, &x.as_slice()[i])).collect();
    Mv::from_vec(c, comps).unwrap()
}

pub fn add_f(a: &Fm, b: &Fm) -> Fm {
    a.try_add(b).unwrap()
}

pub fn scale_f(a: &Fm, f: &S) -> Fm {
    a.scale(f).unwrap()
}

/// The Lie algebroid bracket of `(Λ,E)` written out from its defining formula.
pub fn algebroid_oracle(l: &Mv, e: &Mv, s1: &SectionPair<Rational>, s2: &SectionPair<Rational>) -> (Fm, S) {
    let (a, f, b, g) = (&s1.alpha, &s1.f, &s2.alpha, &s2.f);
    let lab = biv(l, a, b);
    let i_e = add_f(&scale_f(b, &dot(a, e)), &scale_f(a, &-dot(b, e)));
    let form = [
        lie_form(&sharp(l, a), b),
        scale_f(&lie_form(&sharp(l, b), a), &S::int(l.chart(), -1)),
        scale_f(&grad(&lab), &S::int(l.chart(), -1)),
        scale_f(&lie_form(e, b), f),
        scale_f(&lie_form(e, a), &-g),
        scale_f(&i_e, &S::int(l.chart(), -1)),
    ]
    .iter()
    .fold(Fm::zero(l.chart(), 1), |acc, t| add_f(&acc, t));
    let func = &(&(&(&(-&lab) + &biv(l, a, &grad(g))) - &biv(l, b, &grad(f))) + &(f * &deriv(e, g))) - &(g * &deriv(e, f));
    (form, func)
}

/// `Λα + fE`.
pub fn anchor_oracle(l: &Mv, e: &Mv, s: &SectionPair<Rational>) -> Mv {
    sharp(l, &s.alpha).try_add(&e.scale(&s.f).unwrap()).unwrap()
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
pub fn jacobiator(p: &Pair, f: &S, g: &S, h: &S) -> S {
    let br = |a: &S, b: &S| jacobi_bracket(p, a, b).unwrap();
    &(&br(f, &br(g, h)) + &br(g, &br(h, f))) + &br(h, &br(f, g))
}

/// Sections `(dxᵢ, 0)`, `(0, 1)` and `(0, xᵢ)`.
pub fn basis_sections(c: &Arc<Chart>) -> Vec<SectionPair<Rational>> {
    let mut out: Vec<_> = (0..c.dim()).map(|i| SectionPair::new(fb(c, &[i]), S::zero(c)).unwrap()).collect();
    out.push(SectionPair::new(Fm::zero(c, 1), S::one(c)).unwrap());
    out.extend((0..c.dim()).map(|i| SectionPair::new(Fm::zero(c, 1), S::coord(c, i)).unwrap()));
    out
}

/// The contact pair `((∂1 + x2∂3)∧∂2, ∂3)` on `R³`.
pub fn contact() -> Pair {
    let c = Chart::new(["x1", "x2", "x3"]).unwrap();
    let l = vb(&c, &[0]).try_add(&vb(&c, &[2]).scale(&s("x2", &c)).unwrap()).unwrap().wedge(&vb(&c, &[1])).unwrap();
    JacobiPair::new(l, vb(&c, &[2])).unwrap()
}

/// `Λ_{so3} = x3∂1∧∂2 − x2∂1∧∂3 + x1∂2∧∂3` on `R³`.
pub fn so3() -> Mv {
    let c = Chart::new(["x1", "x2", "x3"]).unwrap();
    Mv::from_components(&c, 2, [(vec![0, 1], s("x3", &c)), (vec![0, 2], s("-x2", &c)), (vec![1, 2], s("x1", &c))]).unwrap()
}

pub fn euler(c: &Arc<Chart>) -> Mv {
    Mv::from_vec(c, S::coords(c)).unwrap()
}

/// `F₁ = e^{x1}(dx1∧dx2 + dx3∧dx4)`, `F₂ = 2F₁`, the non-scalar partner
/// `F₂' = e^{x1}(dx1∧dx2 + 2dx3∧dx4)` and `ω = −dx1` on `R⁴`.
pub fn lcs_r4() -> (Fm, Fm, Fm, Fm) {
    let c = Chart::new(["x1", "x2", "x3", "x4"]).unwrap();
    let ex = s("exp(x1)", &c);
    let f1 = fb(&c, &[0, 1]).try_add(&fb(&c, &[2, 3])).unwrap().scale(&ex).unwrap();
    let f2 = f1.scale(&S::int(&c, 2)).unwrap();
    let f3 = fb(&c, &[0, 1]).try_add(&fb(&c, &[2, 3]).scale(&S::int(&c, 2)).unwrap()).unwrap().scale(&ex).unwrap();
    (f1, f2, f3, fb(&c, &[0]).neg())
}
