//! Loading and resolving structure files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use jacobikit::jacobi::{lcs_endomorphism, lcs_to_jacobi, IdentityInputs, JacobiPair, RecursionOperator, IDENTITIES};
use jacobikit::scalar::{parse_scalar, Chart};
use jacobikit::{Endomorphism, Form, Jacobi, Multivector, Rational, Scalar};
use serde_json::Value;
use thiserror::Error;

use crate::schema::{Components, EndoSpec, FormSpec, PairSpec, StructureFile};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("IoError: cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("SchemaError at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("SyntaxError in {path} at offset {offset}: {message}")]
    Syntax { path: String, offset: usize, message: String },
    #[error("UnresolvedReference at {path}: no {kind} named `{name}`")]
    UnresolvedReference { path: String, kind: &'static str, name: String },
    #[error("DimensionMismatch at {path}: expected {expected}, found {found}")]
    DimensionMismatch { path: String, expected: usize, found: usize },
}

type LResult<T> = Result<T, LoadError>;

fn schema(path: impl Into<String>, message: impl Into<String>) -> LoadError {
    LoadError::Schema { path: path.into(), message: message.into() }
}

/// Source of a conformal-morphism check.
#[derive(Clone, Debug)]
pub enum Source {
    Pair(Jacobi),
    Poissonized(Jacobi),
}

/// A resolved check operation.
#[derive(Clone, Debug)]
pub enum Op {
    IsPoisson { pi: Multivector },
    IsJacobi { pair: Jacobi },
    JacobiIdentity { pair: Jacobi, functions: Vec<Scalar> },
    Poissonization { pair: Jacobi },
    LcsToJacobi { f: Form, omega: Form, expect: Option<Jacobi> },
    IsJacobiPencil { p1: Jacobi, p2: Jacobi },
    CheckCompatibility { pair: Jacobi, j: Endomorphism, k_max: Option<u32> },
    CheckTheoremRec { pair: Jacobi, j: Endomorphism },
    Hierarchy { pair: Jacobi, j: Endomorphism, k_max: Option<u32> },
    RecursionOperatorCheck { pair: Jacobi, op: RecursionOperator<Rational>, k_max: Option<u32> },
    IsHomogeneousPoisson { pi: Multivector, z: Multivector },
    CheckHomogeneousPn { pi: Multivector, z: Multivector, j: Endomorphism },
    ConformalMorphism { source: Source, target: Jacobi, a: Scalar, tests: Vec<Scalar> },
    VerifyIdentity { identity: String, inputs: IdentityInputs<Rational> },
    RandomIdentities { identities: Vec<String>, seed: u64, instances: usize, dims: Vec<usize> },
    Unknown(String),
}

impl Op {
    pub fn label(&self) -> &str {
        match self {
            Op::IsPoisson { .. } => "is_poisson",
            Op::IsJacobi { .. } => "is_jacobi",
            Op::JacobiIdentity { .. } => "jacobi_identity",
            Op::Poissonization { .. } => "poissonization",
            Op::LcsToJacobi { .. } => "lcs_to_jacobi",
            Op::IsJacobiPencil { .. } => "is_jacobi_pencil",
            Op::CheckCompatibility { .. } => "check_compatibility",
            Op::CheckTheoremRec { .. } => "check_theorem_rec",
            Op::Hierarchy { .. } => "hierarchy",
            Op::RecursionOperatorCheck { .. } => "recursion_operator_check",
            Op::IsHomogeneousPoisson { .. } => "is_homogeneous_poisson",
            Op::CheckHomogeneousPn { .. } => "check_homogeneous_pn",
            Op::ConformalMorphism { .. } => "verify_conformal_morphism",
            Op::VerifyIdentity { .. } => "verify_identity",
            Op::RandomIdentities { .. } => "random_identities",
            Op::Unknown(op) => op,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub op: Op,
}

/// A fully resolved structure file.
#[derive(Debug)]
pub struct Workspace {
    pub chart: Arc<Chart>,
    pub scalars: BTreeMap<String, Scalar>,
    pub vectors: BTreeMap<String, Multivector>,
    pub bivectors: BTreeMap<String, Multivector>,
    pub forms: BTreeMap<String, Form>,
    pub endomorphisms: BTreeMap<String, Endomorphism>,
    pub pairs: BTreeMap<String, Jacobi>,
    pub recursion_operators: BTreeMap<String, RecursionOperator<Rational>>,
    pub checks: Vec<Check>,
}

pub fn load(path: &Path) -> LResult<Workspace> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io { path: path.display().to_string(), message: e.to_string() })?;
    load_str(&text)
}

pub fn load_str(text: &str) -> LResult<Workspace> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: StructureFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(if path.is_empty() { ".".into() } else { path }, e.into_inner().to_string())
    })?;
    resolve(file)
}

/// Parses `"(1,3)"` into zero-based `[0, 2]`.
fn parse_key(key: &str, path: &str, n: usize) -> LResult<Vec<usize>> {
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|k| k.strip_suffix(')'))
        .ok_or_else(|| schema(path, format!("component key `{key}` must look like \"(1,3)\"")))?;
    let idx = inner
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| schema(path, format!("bad index in component key `{key}`"))))
        .collect::<LResult<Vec<_>>>()?;
    if idx.iter().any(|&i| i == 0 || i > n) {
        return Err(schema(path, format!("component key `{key}` has an index outside 1..={n}")));
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(schema(path, format!("indices must be increasing in component key `{key}`")));
    }
    Ok(idx.into_iter().map(|i| i - 1).collect())
}

struct Resolver {
    chart: Arc<Chart>,
    names: BTreeSet<String>,
    ws_scalars: BTreeMap<String, Scalar>,
}

impl Resolver {
    fn claim(&mut self, name: &str, path: &str) -> LResult<()> {
        if self.chart.index_of(name).is_some() {
            return Err(schema(path, format!("name `{name}` clashes with a coordinate")));
        }
        if !self.names.insert(name.to_string()) {
            return Err(schema(path, format!("name `{name}` is declared twice")));
        }
        Ok(())
    }

    fn expr_on(&self, text: &str, path: &str, chart: &Arc<Chart>) -> LResult<Scalar> {
        if let Some(s) = self.ws_scalars.get(text) {
            return s.lift(chart).map_err(|e| schema(path, e.to_string()));
        }
        parse_scalar(text, chart).map_err(|e| LoadError::Syntax { path: path.into(), offset: e.offset(), message: e.to_string() })
    }

    fn expr(&self, text: &str, path: &str) -> LResult<Scalar> {
        self.expr_on(text, path, &self.chart.clone())
    }

    fn alternating<V: jacobikit::tensor::Variance>(
        &self,
        entries: &BTreeMap<String, String>,
        degree: Option<usize>,
        path: &str,
    ) -> LResult<jacobikit::tensor::Alternating<Rational, V>> {
        let n = self.chart.dim();
        let mut parsed = Vec::new();
        for (key, text) in entries {
            let kp = format!("{path}.{key}");
            let idx = parse_key(key, &kp, n)?;
            parsed.push((idx, self.expr(text, &kp)?));
        }
        let degree = match degree {
            Some(d) => d,
            None => parsed.first().map(|(i, _)| i.len()).ok_or_else(|| schema(path, "cannot infer the degree of an empty field"))?,
        };
        if let Some((idx, _)) = parsed.iter().find(|(i, _)| i.len() != degree) {
            return Err(LoadError::DimensionMismatch { path: path.into(), expected: degree, found: idx.len() });
        }
        jacobikit::tensor::Alternating::from_components(&self.chart, degree, parsed).map_err(|e| schema(path, e.to_string()))
    }

    fn components<V: jacobikit::tensor::Variance>(
        &self,
        c: &Components,
        degree: usize,
        path: &str,
    ) -> LResult<jacobikit::tensor::Alternating<Rational, V>> {
        match c {
            Components::Keyed(map) => self.alternating(map, Some(degree), path),
            Components::List(list) => {
                if degree != 1 {
                    return Err(schema(path, "only vectors may be given as a list"));
                }
                if list.len() != self.chart.dim() {
                    return Err(LoadError::DimensionMismatch { path: path.into(), expected: self.chart.dim(), found: list.len() });
                }
                let comps = list.iter().enumerate().map(|(i, t)| self.expr(t, &format!("{path}[{i}]"))).collect::<LResult<_>>()?;
                jacobikit::tensor::Alternating::from_vec(&self.chart, comps).map_err(|e| schema(path, e.to_string()))
            }
        }
    }
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &'static str, path: &str) -> LResult<&'a T> {
    map.get(name).ok_or_else(|| LoadError::UnresolvedReference { path: path.into(), kind, name: name.into() })
}

fn resolve(file: StructureFile) -> LResult<Workspace> {
    let chart = Chart::new(file.chart.iter().cloned()).map_err(|e| schema("chart", e.to_string()))?;
    let mut r = Resolver { chart: chart.clone(), names: BTreeSet::new(), ws_scalars: BTreeMap::new() };

    let mut scalars = BTreeMap::new();
    for (name, text) in &file.scalars {
        let path = format!("scalars.{name}");
        r.claim(name, &path)?;
        scalars.insert(name.clone(), r.expr(text, &path)?);
    }
    r.ws_scalars = scalars.clone();

    let mut vectors = BTreeMap::new();
    for (name, c) in &file.vectors {
        let path = format!("vectors.{name}");
        r.claim(name, &path)?;
        vectors.insert(name.clone(), r.components(c, 1, &path)?);
    }
    let mut bivectors = BTreeMap::new();
    for (name, c) in &file.bivectors {
        let path = format!("bivectors.{name}");
        r.claim(name, &path)?;
        bivectors.insert(name.clone(), r.components(c, 2, &path)?);
    }
    let mut forms = BTreeMap::new();
    for (name, spec) in &file.forms {
        let path = format!("forms.{name}");
        r.claim(name, &path)?;
        let form = match spec {
            FormSpec::Explicit { degree, components } => r.alternating(components, Some(*degree), &path)?,
            FormSpec::Keyed(map) => r.alternating(map, None, &path)?,
        };
        forms.insert(name.clone(), form);
    }

    let n = chart.dim();
    let mut endomorphisms = BTreeMap::new();
    for (name, spec) in &file.endomorphisms {
        let path = format!("endomorphisms.{name}");
        r.claim(name, &path)?;
        let j = match spec {
            EndoSpec::Rows(rows) => {
                if rows.len() != n {
                    return Err(LoadError::DimensionMismatch { path, expected: n, found: rows.len() });
                }
                let mut parsed = Vec::new();
                for (i, row) in rows.iter().enumerate() {
                    let rp = format!("{path}.rows[{i}]");
                    if row.len() != n {
                        return Err(LoadError::DimensionMismatch { path: rp, expected: n, found: row.len() });
                    }
                    parsed.push(row.iter().enumerate().map(|(k, t)| r.expr(t, &format!("{rp}[{k}]"))).collect::<LResult<Vec<_>>>()?);
                }
                Endomorphism::from_rows(&chart, parsed).map_err(|e| schema(&path, e.to_string()))?
            }
            EndoSpec::Diagonal(d) => {
                if d.len() != n {
                    return Err(LoadError::DimensionMismatch { path, expected: n, found: d.len() });
                }
                let entries = d.iter().enumerate().map(|(k, t)| r.expr(t, &format!("{path}.diagonal[{k}]"))).collect::<LResult<Vec<_>>>()?;
                Endomorphism::diagonal(&chart, entries).map_err(|e| schema(&path, e.to_string()))?
            }
            EndoSpec::Scalar(t) => Endomorphism::scalar(&r.expr(t, &format!("{path}.scalar"))?),
            EndoSpec::Lcs { f1, f2 } => {
                let a = lookup(&forms, f1, "form", &format!("{path}.lcs.f1"))?;
                let b = lookup(&forms, f2, "form", &format!("{path}.lcs.f2"))?;
                lcs_endomorphism(a, b).map_err(|e| schema(&path, e.to_string()))?
            }
        };
        endomorphisms.insert(name.clone(), j);
    }

    let mut pairs = BTreeMap::new();
    for (name, spec) in &file.pairs {
        let path = format!("pairs.{name}");
        r.claim(name, &path)?;
        let pair = match spec {
            PairSpec::Lcs { lcs } => {
                let f = lookup(&forms, &lcs.f, "form", &format!("{path}.lcs.F"))?;
                let w = lookup(&forms, &lcs.omega, "form", &format!("{path}.lcs.omega"))?;
                lcs_to_jacobi(f, w).map_err(|e| schema(&path, e.to_string()))?
            }
            PairSpec::Fields { lambda, e } => {
                let l = match lambda {
                    Some(l) => lookup(&bivectors, l, "bivector", &format!("{path}.lambda"))?.clone(),
                    None => Multivector::zero(&chart, 2),
                };
                let e = match e {
                    Some(e) => lookup(&vectors, e, "vector", &format!("{path}.E"))?.clone(),
                    None => Multivector::zero(&chart, 1),
                };
                JacobiPair::new(l, e).map_err(|e| schema(&path, e.to_string()))?
            }
        };
        pairs.insert(name.clone(), pair);
    }

    let mut recursion_operators = BTreeMap::new();
    for (name, spec) in &file.recursion_operators {
        let path = format!("recursion_operators.{name}");
        r.claim(name, &path)?;
        let j = lookup(&endomorphisms, &spec.j, "endomorphism", &format!("{path}.J"))?.clone();
        let x0 = match &spec.x0 {
            Some(x) => lookup(&vectors, x, "vector", &format!("{path}.X0"))?.clone(),
            None => Multivector::zero(&chart, 1),
        };
        let a0 = match &spec.alpha0 {
            Some(a) => lookup(&forms, a, "form", &format!("{path}.alpha0"))?.clone(),
            None => Form::zero(&chart, 1),
        };
        let phi0 = match &spec.phi0 {
            Some(t) => r.expr(t, &format!("{path}.phi0"))?,
            None => Scalar::zero(&chart),
        };
        let op = RecursionOperator::new(j, x0, a0, phi0).map_err(|e| schema(&path, e.to_string()))?;
        recursion_operators.insert(name.clone(), op);
    }

    let mut ws = Workspace {
        chart,
        scalars,
        vectors,
        bivectors,
        forms,
        endomorphisms,
        pairs,
        recursion_operators,
        checks: Vec::new(),
    };
    let mut used = BTreeSet::new();
    for (i, spec) in file.checks.iter().enumerate() {
        let path = format!("checks[{i}]");
        let op = resolve_op(&ws, &r, &spec.op, &spec.args, &path)?;
        let name = match &spec.name {
            Some(n) => {
                if !used.insert(n.clone()) {
                    return Err(schema(format!("{path}.name"), format!("check name `{n}` is used twice")));
                }
                n.clone()
            }
            None => {
                let mut k = 1;
                let mut candidate = spec.op.clone();
                while used.contains(&candidate) {
                    k += 1;
                    candidate = format!("{}#{k}", spec.op);
                }
                used.insert(candidate.clone());
                candidate
            }
        };
        ws.checks.push(Check { name, op });
    }
    Ok(ws)
}

struct Args<'a> {
    ws: &'a Workspace,
    r: &'a Resolver,
    args: &'a serde_json::Map<String, Value>,
    path: &'a str,
    seen: BTreeSet<&'static str>,
}

impl<'a> Args<'a> {
    fn at(&self, key: &str) -> String {
        format!("{}.args.{key}", self.path)
    }

    fn raw(&mut self, key: &'static str) -> Option<&'a Value> {
        self.seen.insert(key);
        self.args.get(key)
    }

    fn string(&mut self, key: &'static str) -> LResult<Option<&'a str>> {
        match self.raw(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(schema(self.at(key), "expected a string")),
        }
    }

    fn required(&mut self, key: &'static str) -> LResult<&'a str> {
        self.string(key)?.ok_or_else(|| schema(self.at(key), "missing argument"))
    }

    fn pair(&mut self, key: &'static str) -> LResult<Jacobi> {
        let name = self.required(key)?;
        lookup(&self.ws.pairs, name, "pair", &self.at(key)).cloned()
    }

    fn bivector(&mut self, key: &'static str) -> LResult<Multivector> {
        let name = self.required(key)?;
        lookup(&self.ws.bivectors, name, "bivector", &self.at(key)).cloned()
    }

    fn vector(&mut self, key: &'static str) -> LResult<Multivector> {
        let name = self.required(key)?;
        lookup(&self.ws.vectors, name, "vector", &self.at(key)).cloned()
    }

    fn form(&mut self, key: &'static str) -> LResult<Form> {
        let name = self.required(key)?;
        lookup(&self.ws.forms, name, "form", &self.at(key)).cloned()
    }

    fn endo(&mut self, key: &'static str) -> LResult<Endomorphism> {
        let name = self.required(key)?;
        lookup(&self.ws.endomorphisms, name, "endomorphism", &self.at(key)).cloned()
    }

    fn uint(&mut self, key: &'static str) -> LResult<Option<u64>> {
        match self.raw(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v.as_u64().map(Some).ok_or_else(|| schema(self.at(key), "expected a nonnegative integer")),
        }
    }

    fn strings(&mut self, key: &'static str) -> LResult<Option<Vec<&'a str>>> {
        match self.raw(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| v.as_str().ok_or_else(|| schema(self.at(key), "expected a list of strings")))
                .collect::<LResult<Vec<_>>>()
                .map(Some),
            Some(_) => Err(schema(self.at(key), "expected a list of strings")),
        }
    }

    fn functions(&mut self, key: &'static str) -> LResult<Option<Vec<Scalar>>> {
        let Some(items) = self.strings(key)? else { return Ok(None) };
        let at = self.at(key);
        items.iter().enumerate().map(|(i, t)| self.r.expr(t, &format!("{at}[{i}]"))).collect::<LResult<Vec<_>>>().map(Some)
    }

    fn finish(self) -> LResult<()> {
        match self.args.keys().find(|k| !self.seen.contains(k.as_str())) {
            Some(k) => Err(schema(self.at(k), "unknown argument")),
            None => Ok(()),
        }
    }
}

fn resolve_op(ws: &Workspace, r: &Resolver, op: &str, args: &serde_json::Map<String, Value>, path: &str) -> LResult<Op> {
    let mut a = Args { ws, r, args, path, seen: BTreeSet::new() };
    let k_max = |a: &mut Args| -> LResult<Option<u32>> { Ok(a.uint("kmax")?.map(|k| k as u32)) };
    let op = match op {
        "is_poisson" => Op::IsPoisson { pi: a.bivector("pi")? },
        "is_jacobi" => Op::IsJacobi { pair: a.pair("pair")? },
        "jacobi_identity" => {
            let pair = a.pair("pair")?;
            let functions = a.functions("functions")?.unwrap_or_else(|| Scalar::coords(&ws.chart));
            Op::JacobiIdentity { pair, functions }
        }
        "poissonization" => Op::Poissonization { pair: a.pair("pair")? },
        "lcs_to_jacobi" => {
            let f = a.form("F")?;
            let omega = a.form("omega")?;
            let expect = match a.string("expect")? {
                Some(name) => Some(lookup(&ws.pairs, name, "pair", &a.at("expect"))?.clone()),
                None => None,
            };
            Op::LcsToJacobi { f, omega, expect }
        }
        "is_jacobi_pencil" => Op::IsJacobiPencil { p1: a.pair("pair1")?, p2: a.pair("pair2")? },
        "check_compatibility" => Op::CheckCompatibility { pair: a.pair("pair")?, j: a.endo("J")?, k_max: k_max(&mut a)? },
        "check_theorem_rec" => Op::CheckTheoremRec { pair: a.pair("pair")?, j: a.endo("J")? },
        "hierarchy" => Op::Hierarchy { pair: a.pair("pair")?, j: a.endo("J")?, k_max: k_max(&mut a)? },
        "recursion_operator_check" => {
            let pair = a.pair("pair")?;
            let name = a.required("operator")?;
            let op = lookup(&ws.recursion_operators, name, "recursion operator", &a.at("operator"))?.clone();
            Op::RecursionOperatorCheck { pair, op, k_max: k_max(&mut a)? }
        }
        "is_homogeneous_poisson" => Op::IsHomogeneousPoisson { pi: a.bivector("pi")?, z: a.vector("Z")? },
        "check_homogeneous_pn" => Op::CheckHomogeneousPn { pi: a.bivector("pi")?, z: a.vector("Z")?, j: a.endo("J")? },
        "verify_conformal_morphism" => {
            let source = match a.raw("source") {
                Some(Value::String(name)) => Source::Pair(lookup(&ws.pairs, name, "pair", &a.at("source"))?.clone()),
                Some(Value::Object(m)) if m.len() == 1 && m.contains_key("poissonize") => {
                    let at = format!("{}.poissonize", a.at("source"));
                    let name = m["poissonize"].as_str().ok_or_else(|| schema(&at, "expected a pair name"))?;
                    Source::Poissonized(lookup(&ws.pairs, name, "pair", &at)?.clone())
                }
                _ => return Err(schema(a.at("source"), "expected a pair name or {\"poissonize\": pair}")),
            };
            let target = a.pair("target")?;
            let src_chart = match &source {
                Source::Pair(p) => p.chart().clone(),
                Source::Poissonized(p) => p.chart().extended("t").map_err(|e| schema(a.at("source"), e.to_string()))?,
            };
            let text = a.required("a")?;
            let factor = r.expr_on(text, &a.at("a"), &src_chart)?;
            let tests = a.functions("tests")?.unwrap_or_default();
            Op::ConformalMorphism { source, target, a: factor, tests }
        }
        "verify_identity" => {
            let identity = a.required("identity")?.to_string();
            let mut inputs = IdentityInputs::default();
            if let Some(v) = a.raw("inputs") {
                let at = a.at("inputs");
                let map = v.as_object().ok_or_else(|| schema(&at, "expected an object"))?;
                for (key, val) in map {
                    let kp = format!("{at}.{key}");
                    let name = val.as_str().ok_or_else(|| schema(&kp, "expected a name"))?;
                    match key.as_str() {
                        "lambda" => inputs.lambda = Some(lookup(&ws.bivectors, name, "bivector", &kp)?.clone()),
                        "pi" => inputs.pi = Some(lookup(&ws.bivectors, name, "bivector", &kp)?.clone()),
                        "E" => inputs.e = Some(lookup(&ws.vectors, name, "vector", &kp)?.clone()),
                        "X" => inputs.x = Some(lookup(&ws.vectors, name, "vector", &kp)?.clone()),
                        "Y" => inputs.y = Some(lookup(&ws.vectors, name, "vector", &kp)?.clone()),
                        "J" => inputs.j = Some(lookup(&ws.endomorphisms, name, "endomorphism", &kp)?.clone()),
                        "alpha" => inputs.alpha = Some(lookup(&ws.forms, name, "form", &kp)?.clone()),
                        "beta" => inputs.beta = Some(lookup(&ws.forms, name, "form", &kp)?.clone()),
                        "gamma" => inputs.gamma = Some(lookup(&ws.forms, name, "form", &kp)?.clone()),
                        _ => return Err(schema(kp, "unknown identity input")),
                    }
                }
            }
            inputs.k = a.uint("k")?.map(|k| k as u32);
            Op::VerifyIdentity { identity, inputs }
        }
        "random_identities" => {
            let identities: Vec<String> = match a.strings("identities")? {
                Some(list) => list.into_iter().map(String::from).collect(),
                None => ["eq2", "eq4", "eq5", "eq8", "lemma_vec", "lemma_nij"].map(String::from).to_vec(),
            };
            if let Some(bad) = identities.iter().find(|i| !IDENTITIES.contains(&i.as_str())) {
                return Err(schema(a.at("identities"), format!("unknown identity `{bad}`")));
            }
            let seed = a.uint("seed")?.ok_or_else(|| schema(a.at("seed"), "missing argument"))?;
            let instances = a.uint("instances")?.unwrap_or(10) as usize;
            let dims = match a.raw("dims") {
                None | Some(Value::Null) => vec![2, 3, 4],
                Some(Value::Array(items)) if !items.is_empty() => items
                    .iter()
                    .map(|v| v.as_u64().filter(|&d| d >= 1).map(|d| d as usize).ok_or_else(|| schema(a.at("dims"), "expected positive integers")))
                    .collect::<LResult<Vec<_>>>()?,
                Some(_) => return Err(schema(a.at("dims"), "expected a nonempty list of dimensions")),
            };
            Op::RandomIdentities { identities, seed, instances, dims }
        }
        other => return Ok(Op::Unknown(other.to_string())),
    };
    a.finish()?;
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> LoadError {
        load_str(text).err().expect("load should fail")
    }

    #[test]
    fn keys() {
        assert_eq!(parse_key("(1,3)", "k", 3).unwrap(), vec![0, 2]);
        assert_eq!(parse_key(" (2) ", "k", 3).unwrap(), vec![1]);
        for bad in ["(2,1)", "(1,1)", "(0,2)", "(1,4)", "1,2", "(a,2)"] {
            assert!(matches!(parse_key(bad, "k", 3), Err(LoadError::Schema { .. })), "{bad}");
        }
    }

    #[test]
    fn decreasing_key_is_a_schema_error() {
        let e = err(r#"{"chart":["x","y"],"bivectors":{"L":{"(2,1)":"1"}}}"#);
        assert!(matches!(e, LoadError::Schema { ref path, .. } if path.contains("L")), "{e}");
    }

    #[test]
    fn undefined_reference() {
        let e = err(r#"{"chart":["x","y"],"bivectors":{"L":{"(1,2)":"1"}},"pairs":{"p":{"lambda":"L"}},
            "checks":[{"op":"check_compatibility","args":{"pair":"p","J":"J2"}}]}"#);
        assert!(matches!(e, LoadError::UnresolvedReference { ref name, .. } if name == "J2"), "{e}");
    }

    #[test]
    fn wrong_vector_length() {
        let e = err(r#"{"chart":["x","y"],"vectors":{"v":["1","2","3"]}}"#);
        assert!(matches!(e, LoadError::DimensionMismatch { expected: 2, found: 3, .. }), "{e}");
    }

    #[test]
    fn expression_offset() {
        let e = err(r#"{"chart":["x1"],"scalars":{"f":"x1 +"}}"#);
        assert!(matches!(e, LoadError::Syntax { offset: 4, .. }), "{e}");
    }

    #[test]
    fn names_are_unique_and_distinct_from_coordinates() {
        assert!(matches!(err(r#"{"chart":["x"],"scalars":{"x":"1"}}"#), LoadError::Schema { .. }));
        assert!(matches!(err(r#"{"chart":["x"],"scalars":{"f":"1"},"vectors":{"f":["1"]}}"#), LoadError::Schema { .. }));
    }

    #[test]
    fn unknown_fields_and_arguments() {
        assert!(matches!(err(r#"{"chart":["x"],"extra":1}"#), LoadError::Schema { .. }));
        let e = err(r#"{"chart":["x"],"bivectors":{},"checks":[{"op":"is_poisson","args":{"pi":"L","bogus":1}}]}"#);
        assert!(matches!(e, LoadError::Schema { .. } | LoadError::UnresolvedReference { .. }), "{e}");
    }

    #[test]
    fn default_check_names() {
        let ws = load_str(
            r#"{"chart":["x","y"],"bivectors":{"L":{"(1,2)":"1"}},
            "checks":[{"op":"is_poisson","args":{"pi":"L"}},{"op":"is_poisson","args":{"pi":"L"}},{"op":"frobnicate"}]}"#,
        )
        .unwrap();
        let names: Vec<_> = ws.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["is_poisson", "is_poisson#2", "frobnicate"]);
        assert!(matches!(ws.checks[2].op, Op::Unknown(_)));
    }
}
