//! Executing resolved checks.

use std::time::Instant;

use jacobikit::jacobi::random::InstanceGenerator;
use jacobikit::jacobi::{
    check_compatibility, check_homogeneous_pn, check_theorem_rec, depoissonize, hierarchy, is_homogeneous_poisson,
    is_jacobi, is_jacobi_pencil, is_poisson, jacobi_bracket, lcs_to_jacobi, poissonize, recursion_operator_check,
    run_check, verify_conformal_morphism, verify_identity, CheckReport, JacobiPair, Status,
};
use jacobikit::{Error, Jacobi, Scalar};
use rayon::prelude::*;
use serde::Serialize;

use crate::load::{Check, Op, Source};

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    #[serde(rename = "operation")]
    pub op: String,
    pub status: &'static str,
    pub residuals: Vec<String>,
    pub notes: Vec<String>,
}

fn or_error(name: &str, r: jacobikit::Result<CheckReport>) -> CheckReport {
    r.unwrap_or_else(|e| CheckReport::error(name, e.to_string()))
}

fn pair_residuals(prefix: &str, got: &Jacobi, want: &Jacobi) -> jacobikit::Result<Vec<String>> {
    let mut out = got.lambda().try_sub(want.lambda())?.residuals(&format!("{prefix} Λ"));
    out.extend(got.e().try_sub(want.e())?.residuals(&format!("{prefix} E")));
    Ok(out)
}

fn jacobi_identity(pair: &Jacobi, functions: &[Scalar]) -> CheckReport {
    run_check("jacobi_identity", |r| {
        let br = |a: &Scalar, b: &Scalar| jacobi_bracket(pair, a, b);
        let mut res = Vec::new();
        for i in 0..functions.len() {
            for j in i + 1..functions.len() {
                for k in j + 1..functions.len() {
                    let (f, g, h) = (&functions[i], &functions[j], &functions[k]);
                    let s = br(f, &br(g, h)?)?.try_add(&br(g, &br(h, f)?)?)?.try_add(&br(h, &br(f, g)?)?)?;
                    if !s.is_zero() {
                        res.push(format!("Jacobiator ({f}, {g}, {h}): {s}"));
                    }
                }
            }
        }
        r.clause("{f,{g,h}} + {g,{h,f}} + {h,{f,g}} = 0", res);
        Ok(())
    })
}

fn poissonization(pair: &Jacobi) -> CheckReport {
    run_check("poissonization", |r| {
        let pi = poissonize(pair)?;
        r.clause("is_poisson(poissonize(p))", is_poisson(&pi).residuals);
        let back = depoissonize(&pi, pair.chart().dim())?;
        r.clause("depoissonize(poissonize(p)) = p", pair_residuals("roundtrip −", &back, pair)?);
        Ok(())
    })
}

fn lcs(f: &jacobikit::Form, omega: &jacobikit::Form, expect: Option<&Jacobi>) -> CheckReport {
    run_check("lcs_to_jacobi", |r| {
        let pair = match lcs_to_jacobi(f, omega) {
            Ok(p) => p,
            Err(Error::NotLcs { residuals }) => {
                r.clause("structure equations", residuals);
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        r.clause("structure equations", Vec::new());
        r.clause("is_jacobi", is_jacobi(&pair).residuals);
        if let Some(want) = expect {
            r.clause("matches expected pair", pair_residuals("derived −", &pair, want)?);
        }
        Ok(())
    })
}

fn hierarchy_check(pair: &Jacobi, j: &jacobikit::Endomorphism, k_max: u32) -> CheckReport {
    run_check("hierarchy", |r| {
        let members = hierarchy(pair, j, k_max)?;
        r.note(format!("{} structures, k ≤ {k_max}", members.len()));
        for (k, m) in members.iter().enumerate() {
            r.clause(&format!("is_jacobi k={k}"), is_jacobi(m).residuals.iter().map(|s| format!("k={k}: {s}")).collect());
        }
        for (a, p) in members.iter().enumerate() {
            for (b, q) in members.iter().enumerate().skip(a + 1) {
                let pencil = is_jacobi_pencil(p, q)?;
                if pencil.status == Status::Error {
                    r.flag_error(format!("pencil ({a},{b}): {}", pencil.notes.join("; ")));
                }
                r.clause(&format!("pencil ({a},{b})"), pencil.residuals.iter().map(|s| format!("({a},{b}): {s}")).collect());
            }
        }
        Ok(())
    })
}

fn random_identities(identities: &[String], seed: u64, instances: usize, dims: &[usize]) -> CheckReport {
    run_check("random_identities", |r| {
        r.note(format!("seed {seed}, {instances} instances, dimensions {dims:?}, degree ≤ 1"));
        let mut g = InstanceGenerator::new(seed);
        g.max_degree = 1;
        let mut failures: Vec<Vec<String>> = vec![Vec::new(); identities.len()];
        for i in 0..instances {
            let n = dims[i % dims.len()];
            let chart = InstanceGenerator::chart(n);
            let inputs = g.identity_inputs::<jacobikit::Rational>(&chart);
            for (slot, name) in identities.iter().enumerate() {
                let rep = verify_identity(name, &inputs)?;
                if rep.status == Status::Error {
                    return Err(Error::HypothesisViolated(format!("{name} on instance {i}: {}", rep.notes.join("; "))));
                }
                failures[slot].extend(rep.residuals.iter().map(|s| format!("{name} instance {i} (n={n}): {s}")));
            }
        }
        for (name, res) in identities.iter().zip(failures) {
            r.clause(name, res);
        }
        Ok(())
    })
}

fn execute(op: &Op, default_kmax: u32) -> CheckReport {
    match op {
        Op::IsPoisson { pi } => is_poisson(pi),
        Op::IsJacobi { pair } => is_jacobi(pair),
        Op::JacobiIdentity { pair, functions } => jacobi_identity(pair, functions),
        Op::Poissonization { pair } => poissonization(pair),
        Op::LcsToJacobi { f, omega, expect } => lcs(f, omega, expect.as_ref()),
        Op::IsJacobiPencil { p1, p2 } => or_error("is_jacobi_pencil", is_jacobi_pencil(p1, p2)),
        Op::CheckCompatibility { pair, j, k_max } => check_compatibility(pair, j, k_max.unwrap_or(default_kmax)),
        Op::CheckTheoremRec { pair, j } => or_error("check_theorem_rec", check_theorem_rec(pair, j)),
        Op::Hierarchy { pair, j, k_max } => hierarchy_check(pair, j, k_max.unwrap_or(default_kmax)),
        Op::RecursionOperatorCheck { pair, op, k_max } => recursion_operator_check(pair, op, k_max.unwrap_or(default_kmax)),
        Op::IsHomogeneousPoisson { pi, z } => is_homogeneous_poisson(pi, z),
        Op::CheckHomogeneousPn { pi, z, j } => or_error("check_homogeneous_pn", check_homogeneous_pn(pi, z, j)),
        Op::ConformalMorphism { source, target, a, tests } => {
            let src = match source {
                Source::Pair(p) => Ok(p.clone()),
                Source::Poissonized(p) => poissonize(p).and_then(JacobiPair::poisson),
            };
            match src {
                Ok(src) => verify_conformal_morphism(&src, target, a, tests),
                Err(e) => CheckReport::error("verify_conformal_morphism", e.to_string()),
            }
        }
        Op::VerifyIdentity { identity, inputs } => or_error("verify_identity", verify_identity(identity, inputs)),
        Op::RandomIdentities { identities, seed, instances, dims } => random_identities(identities, *seed, *instances, dims),
        Op::Unknown(name) => CheckReport::error(name.as_str(), format!("unknown operation `{name}`")),
    }
}

/// Runs every check, in parallel when `jobs > 1`, and returns the records in
/// input order together with the elapsed milliseconds of each.
pub fn run_all(checks: &[Check], default_kmax: u32, jobs: Option<usize>) -> (Vec<Record>, Vec<u128>) {
    let one = |c: &Check| {
        let start = Instant::now();
        let report = execute(&c.op, default_kmax);
        let elapsed = start.elapsed().as_millis();
        let mut residuals = report.residuals;
        let mut notes = report.notes;
        if report.status == Status::Error && residuals.is_empty() {
            residuals = std::mem::take(&mut notes);
        }
        let record = Record { name: c.name.clone(), op: c.op.label().to_string(), status: report.status.as_str(), residuals, notes };
        (record, elapsed)
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build().expect("thread pool");
    pool.install(|| checks.par_iter().map(one).collect::<Vec<_>>()).into_iter().unzip()
}
