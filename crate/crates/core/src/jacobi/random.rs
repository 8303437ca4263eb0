//! Seeded generators of random polynomial tensors.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::jacobi::{invert_matrix, lcs_to_jacobi, IdentityInputs, JacobiPair};
use crate::num::Coeff;
use crate::scalar::{Chart, ExpPoly, Monomial, ScalarField};
use crate::tensor::index::combinations;
use crate::tensor::{differential, Alternating, DifferentialForm, EndomorphismField, MultivectorField, Variance};

/// Deterministic source of random polynomial fields.
pub struct InstanceGenerator {
    rng: ChaCha8Rng,
    /// Maximal total degree of generated polynomials.
    pub max_degree: u32,
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        InstanceGenerator { rng: ChaCha8Rng::seed_from_u64(seed), max_degree: 2 }
    }

    /// A chart `x1, …, xn`.
    pub fn chart(n: usize) -> Arc<Chart> {
        Chart::new((1..=n).map(|i| format!("x{i}"))).expect("valid names")
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// A polynomial with at most three terms and small integer coefficients.
    pub fn polynomial<C: Coeff>(&mut self, chart: &Arc<Chart>) -> ScalarField<C> {
        let n = chart.dim();
        let mut p = ExpPoly::zero(n);
        for _ in 0..self.rng.gen_range(0..=3) {
            let coeff = self.rng.gen_range(-3i64..=3);
            if coeff == 0 {
                continue;
            }
            let degree = self.rng.gen_range(0..=self.max_degree);
            let mut exps = vec![0u32; n];
            for _ in 0..degree {
                exps[self.rng.gen_range(0..n)] += 1;
            }
            p = p.add(&ExpPoly::term(Monomial { freq: vec![C::zero(); n], exps }, C::from_int(coeff)));
        }
        ScalarField::from_poly(chart, p)
    }

    pub fn vector<C: Coeff>(&mut self, chart: &Arc<Chart>) -> MultivectorField<C> {
        let comps = (0..chart.dim()).map(|_| self.polynomial(chart)).collect();
        MultivectorField::from_vec(chart, comps).expect("one component per coordinate")
    }

    pub fn form<C: Coeff>(&mut self, chart: &Arc<Chart>) -> DifferentialForm<C> {
        let comps = (0..chart.dim()).map(|_| self.polynomial(chart)).collect();
        DifferentialForm::from_vec(chart, comps).expect("one component per coordinate")
    }

    /// A random alternating field of the given degree.
    pub fn alternating<C: Coeff, V: Variance>(&mut self, chart: &Arc<Chart>, degree: usize) -> Alternating<C, V> {
        let entries: Vec<_> = combinations(chart.dim(), degree).into_iter().map(|idx| (idx, self.polynomial(chart))).collect();
        Alternating::from_components(chart, degree, entries).expect("increasing indices")
    }

    pub fn bivector<C: Coeff>(&mut self, chart: &Arc<Chart>) -> MultivectorField<C> {
        let n = chart.dim();
        let entries: Vec<_> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])).map(|idx| (idx, self.polynomial(chart))).collect();
        MultivectorField::from_components(chart, 2, entries).expect("increasing indices")
    }

    pub fn endomorphism<C: Coeff>(&mut self, chart: &Arc<Chart>) -> EndomorphismField<C> {
        let n = chart.dim();
        let rows = (0..n).map(|_| (0..n).map(|_| self.polynomial(chart)).collect()).collect();
        EndomorphismField::from_rows(chart, rows).expect("square")
    }

    /// A constant antisymmetric matrix with entries in `-2..=2`.
    pub fn antisymmetric<C: Coeff>(&mut self, chart: &Arc<Chart>) -> Vec<Vec<ScalarField<C>>> {
        let n = chart.dim();
        let mut m = vec![vec![ScalarField::zero(chart); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = ScalarField::int(chart, self.rng.gen_range(-2i64..=2));
                m[j][i] = -&v;
                m[i][j] = v;
            }
        }
        m
    }

    /// `J = c·Id + L·K` for the component matrix `L` of `lambda` and a random
    /// constant antisymmetric `K`; then `J^kΛ` is a bivector for every `k`.
    pub fn compatible_endomorphism<C: Coeff>(&mut self, lambda: &MultivectorField<C>) -> EndomorphismField<C> {
        let chart = lambda.chart();
        let k = self.antisymmetric(chart);
        let lk = EndomorphismField::from_rows(chart, crate::tensor::bivector_matrix(lambda))
            .and_then(|l| l.compose(&EndomorphismField::from_rows(chart, k)?))
            .expect("square");
        let c = ScalarField::int(chart, self.rng.gen_range(-2i64..=2));
        EndomorphismField::scalar(&c).try_add(&lk).expect("same chart")
    }

    /// `L·K·L` for the component matrix `L` of `lambda`.
    pub fn sandwich<C: Coeff>(&mut self, lambda: &MultivectorField<C>) -> MultivectorField<C> {
        let chart = lambda.chart();
        let k = EndomorphismField::from_rows(chart, self.antisymmetric(chart)).expect("square");
        let l = EndomorphismField::from_rows(chart, crate::tensor::bivector_matrix(lambda)).expect("square");
        let m = l.compose(&k).and_then(|lk| lk.compose(&l)).expect("same chart");
        let n = chart.dim();
        let entries: Vec<_> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (vec![i, j], m.entry(i, j).clone())).collect();
        MultivectorField::from_components(chart, 2, entries).expect("increasing indices")
    }

    /// The alternating field with the given (antisymmetric) component matrix.
    pub fn from_matrix<C: Coeff, V: Variance>(chart: &Arc<Chart>, m: &[Vec<ScalarField<C>>]) -> Alternating<C, V> {
        let n = chart.dim();
        let entries: Vec<_> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (vec![i, j], m[i][j].clone())).collect();
        Alternating::from_components(chart, 2, entries).expect("increasing indices")
    }

    /// A constant antisymmetric matrix with nonzero determinant (`n` even).
    pub fn nondegenerate<C: Coeff>(&mut self, chart: &Arc<Chart>) -> Vec<Vec<ScalarField<C>>> {
        assert!(chart.dim() % 2 == 0, "nondegenerate antisymmetric matrices need even dimension");
        loop {
            let m = self.antisymmetric(chart);
            if invert_matrix(chart, &m).is_ok() {
                return m;
            }
        }
    }

    /// A locally conformal symplectic pair `(e^ℓ F₀, −dℓ)` with `F₀` constant
    /// and `ℓ` an integer linear form (`n` even).
    pub fn lcs<C: Coeff>(&mut self, chart: &Arc<Chart>) -> (DifferentialForm<C>, DifferentialForm<C>) {
        let f0: DifferentialForm<C> = Self::from_matrix(chart, &self.nondegenerate(chart));
        let freq: Vec<C> = (0..chart.dim()).map(|_| C::from_int(self.rng.gen_range(-1i64..=1))).collect();
        let ell = ScalarField::from_poly(
            chart,
            (0..chart.dim()).fold(ExpPoly::zero(chart.dim()), |acc, i| acc.add(&ExpPoly::var(chart.dim(), i).scale(&freq[i]))),
        );
        let f = f0.scale(&ScalarField::exp_linear(chart, freq)).expect("same chart");
        (f, differential(&ell).neg())
    }

    /// A random Jacobi pair: a constant Poisson, so(3), contact or LCS
    /// structure, followed by a conformal change `(aΛ, aE + Λ(da))` half of
    /// the time.
    pub fn jacobi_pair<C: Coeff>(&mut self, chart: &Arc<Chart>) -> JacobiPair<C> {
        let n = chart.dim();
        let base = loop {
            match self.rng.gen_range(0..4) {
                0 => {
                    let l = Self::from_matrix(chart, &self.antisymmetric(chart));
                    break JacobiPair::poisson(l).expect("degree two");
                }
                1 if n == 3 => {
                    let x = |i| ScalarField::coord(chart, i);
                    let m = [
                        vec![ScalarField::zero(chart), x(2), -x(1)],
                        vec![-x(2), ScalarField::zero(chart), x(0)],
                        vec![x(1), -x(0), ScalarField::zero(chart)],
                    ];
                    break JacobiPair::poisson(Self::from_matrix(chart, &m)).expect("degree two");
                }
                2 if n == 3 => {
                    let d = |i| MultivectorField::<C>::basis(chart, &[i]).expect("index in range");
                    let l = d(0).try_add(&d(2).scale(&ScalarField::coord(chart, 1)).expect("same chart")).and_then(|v| v.wedge(&d(1)));
                    break JacobiPair::new(l.expect("same chart"), d(2)).expect("degrees");
                }
                3 if n % 2 == 0 => {
                    let (f, w) = self.lcs(chart);
                    break lcs_to_jacobi(&f, &w).expect("locally conformal symplectic");
                }
                _ => {}
            }
        };
        if self.coin(0.5) {
            return base;
        }
        let a = self.polynomial::<C>(chart);
        if a.is_zero() {
            return base;
        }
        let lambda = base.lambda().scale(&a).expect("same chart");
        let e = base.e().scale(&a).and_then(|e| e.try_add(&base.lambda().contract(&differential(&a))?)).expect("same chart");
        JacobiPair::new(lambda, e).expect("degrees")
    }

    /// `(J, π)` with `J = a·Id + LK` and `π = bΛ + c·LKL` for one constant
    /// antisymmetric `K`, so that `JΛ` and `Jπ` are both bivectors.
    pub fn compatible_family<C: Coeff>(&mut self, lambda: &MultivectorField<C>) -> (EndomorphismField<C>, MultivectorField<C>) {
        let chart = lambda.chart();
        let l = EndomorphismField::from_rows(chart, crate::tensor::bivector_matrix(lambda)).expect("square");
        let lk = l.compose(&EndomorphismField::from_rows(chart, self.antisymmetric(chart)).expect("square")).expect("same chart");
        let lkl: MultivectorField<C> = Self::from_matrix(chart, lk.compose(&l).expect("same chart").rows());
        let a = self.polynomial::<C>(chart);
        let j = lk.try_add(&EndomorphismField::scalar(&a)).expect("same chart");
        let b = self.polynomial::<C>(chart);
        let c = C::from_int(self.rng.gen_range(-2i64..=2));
        let pi = lambda.scale(&b).and_then(|x| x.try_add(&lkl.scale_const(&c))).expect("same chart");
        (j, pi)
    }

    /// Either a random basis covector or a random polynomial 1-form.
    pub fn covector<C: Coeff>(&mut self, chart: &Arc<Chart>) -> DifferentialForm<C> {
        if self.coin(0.5) {
            DifferentialForm::basis(chart, &[self.rng.gen_range(0..chart.dim())]).expect("index in range")
        } else {
            self.form(chart)
        }
    }

    /// Inputs for every unconditional identity of the registry: `Λ`, `(J, π)`
    /// from [`Self::compatible_family`], `E`, `X`, `Y`, three covectors and
    /// `k ∈ {1, 2}`.
    pub fn identity_inputs<C: Coeff>(&mut self, chart: &Arc<Chart>) -> IdentityInputs<C> {
        let lambda = self.bivector(chart);
        let (j, pi) = self.compatible_family(&lambda);
        IdentityInputs {
            pi: Some(pi),
            j: Some(j),
            e: Some(self.vector(chart)),
            x: Some(self.vector(chart)),
            y: Some(self.vector(chart)),
            alpha: Some(self.covector(chart)),
            beta: Some(self.covector(chart)),
            gamma: Some(self.covector(chart)),
            k: Some(self.rng.gen_range(1..=2)),
            lambda: Some(lambda),
        }
    }
}
