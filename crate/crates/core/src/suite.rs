//! The desk-scale verification grid run by `qsorep suite`.
//!
//! Weights have entries in `{0, 1/2, ..., 5/2}`; nonclassical ones use
//! `{1/2, 3/2, 5/2}`. All sign vectors are used for `n <= 4` and a fixed
//! pseudo-random sample of them above that.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::patterns::{enumerate, validate_weight, Flavor, Half, HighestWeight, SignVector};
use crate::qnum::QParam;
use crate::repmatrix::{build, coeff_c, RepMatrices, RepSpec};
use crate::verify::{
    check_relations, commutant_dimension, decompose_prime, identify_blocks, spectral_fingerprint, DEFAULT_CAP,
};

const SIGN_SEED: u64 = 0x51_9e5;

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub ns: Vec<usize>,
    pub qs: Vec<f64>,
    /// Largest weight entry, doubled.
    pub max_entry: i32,
    /// Sign vectors per nonclassical weight when `n > 4`.
    pub sampled_signs: usize,
    pub tol: f64,
    pub commutant_tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            ns: vec![3, 4, 5, 6],
            qs: vec![1.2, 2.0],
            max_entry: 5,
            sampled_signs: 8,
            tol: 1e-9,
            commutant_tol: crate::verify::commutant::DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Every dominant weight of `so_n` with entries in `[-max, max]` (doubled).
pub fn weights(n: usize, flavor: Flavor, max_entry: i32) -> Vec<HighestWeight> {
    let len = n / 2;
    let mut out = Vec::new();
    let mut cur = vec![0i32; len];
    fn rec(i: usize, cur: &mut Vec<i32>, n: usize, flavor: Flavor, max: i32, out: &mut Vec<HighestWeight>) {
        if i == cur.len() {
            let entries: Vec<Half> = cur.iter().map(|&d| Half::from_doubled(d)).collect();
            if validate_weight(n, &entries, flavor) {
                out.push(HighestWeight::new(n, entries, flavor).expect("validated"));
            }
            return;
        }
        let hi = if i == 0 { max } else { cur[i - 1] };
        for d in (-max..=hi).rev() {
            cur[i] = d;
            rec(i + 1, cur, n, flavor, max, out);
        }
    }
    rec(0, &mut cur, n, flavor, max_entry, &mut out);
    out
}

/// All sign vectors for `n <= 4`, otherwise `count` of them chosen with a
/// fixed seed.
pub fn sign_vectors(n: usize, count: usize) -> Vec<SignVector> {
    let all: Vec<SignVector> = SignVector::all(n).collect();
    if n <= 4 || count >= all.len() {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SIGN_SEED + n as u64);
    let mut idx = sample(&mut rng, all.len(), count).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

/// The representations covered by the relation and commutant checks.
pub fn grid(opts: &SuiteOptions) -> Result<Vec<RepSpec>> {
    let mut specs = Vec::new();
    for &qv in &opts.qs {
        let q = QParam::new(qv)?;
        for &n in &opts.ns {
            for w in weights(n, Flavor::Classical, opts.max_entry) {
                specs.push(RepSpec::classical(w, q)?);
            }
            for w in weights(n, Flavor::Nonclassical, opts.max_entry) {
                for s in sign_vectors(n, opts.sampled_signs) {
                    specs.push(RepSpec::nonclassical(w.clone(), s, q)?);
                }
            }
        }
    }
    Ok(specs)
}

fn label(spec: &RepSpec) -> String {
    let signs = spec.signs().map(|s| s.to_string()).unwrap_or_default();
    format!("n={} {} {}{} q={}", spec.n(), spec.kind(), spec.weight(), signs, spec.q().value())
}

pub fn run(opts: &SuiteOptions) -> Result<SuiteReport> {
    let specs = grid(opts)?;
    let reps: Vec<RepMatrices> = specs.iter().map(build).collect::<Result<_>>()?;
    let checks = vec![
        relations_check(&specs, &reps, opts)?,
        one_dim_check()?,
        commutant_check(&specs, &reps, opts)?,
        decomposition_check(opts)?,
        fingerprint_check(&specs, &reps),
        vanishing_check(opts)?,
    ];
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport { checks, pass })
}

fn relations_check(specs: &[RepSpec], reps: &[RepMatrices], opts: &SuiteOptions) -> Result<CheckResult> {
    let mut worst = (0.0f64, String::new());
    for (spec, rep) in specs.iter().zip(reps) {
        let r = check_relations(rep, opts.tol)?;
        if r.max_residual >= worst.0 {
            worst = (r.max_residual, format!("{} {}", label(spec), r.worst.map(|w| w.to_string()).unwrap_or_default()));
        }
    }
    Ok(CheckResult {
        name: "relations".into(),
        pass: worst.0 < opts.tol,
        cases: specs.len(),
        detail: format!("max residual {:.3e} at {}", worst.0, worst.1),
    })
}

fn one_dim_check() -> Result<CheckResult> {
    let mut cases = 0;
    let mut worst = 0.0f64;
    for qv in [1.2, 2.0, 4.0] {
        let q = QParam::new(qv)?;
        for n in 3..=7 {
            for s in SignVector::all(n) {
                let rep = build(&RepSpec::one_dim(n, s, q)?)?;
                worst = worst.max(check_relations(&rep, 1e-13)?.max_residual);
                cases += 1;
            }
        }
    }
    Ok(CheckResult {
        name: "one-dim".into(),
        pass: worst < 1e-13,
        cases,
        detail: format!("max residual {worst:.3e}"),
    })
}

fn commutant_check(specs: &[RepSpec], reps: &[RepMatrices], opts: &SuiteOptions) -> Result<CheckResult> {
    let mut cases = 0;
    let mut bad = Vec::new();
    for (spec, rep) in specs.iter().zip(reps) {
        if rep.dim() > DEFAULT_CAP {
            continue;
        }
        let dim = commutant_dimension(rep, opts.commutant_tol)?;
        cases += 1;
        if dim != 1 {
            bad.push(format!("{} -> {dim}", label(spec)));
        }
    }
    let detail = if bad.is_empty() { "all irreducible".to_string() } else { bad.join("; ") };
    Ok(CheckResult { name: "commutant".into(), pass: bad.is_empty(), cases, detail })
}

fn decomposition_check(opts: &SuiteOptions) -> Result<CheckResult> {
    let q = QParam::new(opts.qs.first().copied().unwrap_or(2.0))?;
    let mut cases = 0;
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for n in [3, 4, 5] {
        for w in weights(n, Flavor::Nonclassical, opts.max_entry) {
            for evens in SignVector::all(n).filter(|s| (2..=n).all(|k| k % 2 == 0 || s.get(k) == 1)) {
                let spec = RepSpec::prime(w.clone(), evens, q)?;
                let rep = build(&spec)?;
                let report = decompose_prime(&rep, opts.tol)?;
                worst = worst.max(report.invariance_residual);
                cases += 1;
                let expected = 1usize << ((n - 1) / 2);
                let total: usize = report.blocks.iter().map(|b| b.rep.dim()).sum();
                let matches = identify_blocks(&rep, &report, 1e-8)?;
                let bijective = report.blocks.iter().zip(&matches).all(|(b, m)| m.len() == 1 && m[0] == b.signs);
                if report.blocks.len() != expected || total != rep.dim() || !bijective {
                    bad.push(label(&spec));
                }
            }
        }
    }
    let detail = if bad.is_empty() { format!("max leakage {worst:.3e}") } else { bad.join("; ") };
    Ok(CheckResult { name: "decomposition".into(), pass: bad.is_empty(), cases, detail })
}

fn fingerprint_check(specs: &[RepSpec], reps: &[RepMatrices]) -> CheckResult {
    let chosen: Vec<(&RepSpec, &RepMatrices)> =
        specs.iter().zip(reps).filter(|(s, _)| s.n() <= 4 && s.q().value() == 2.0).collect();
    let prints: Vec<_> = chosen.iter().map(|(_, r)| spectral_fingerprint(r)).collect();
    let mut bad = Vec::new();
    for i in 0..prints.len() {
        for j in 0..i {
            if !prints[i].distinct_from(&prints[j]) {
                bad.push(format!("{} ~ {}", label(chosen[i].0), label(chosen[j].0)));
            }
        }
    }
    let detail = if bad.is_empty() { "pairwise distinct".to_string() } else { bad.join("; ") };
    CheckResult { name: "fingerprints".into(), pass: bad.is_empty(), cases: prints.len(), detail }
}

fn vanishing_check(opts: &SuiteOptions) -> Result<CheckResult> {
    let q = QParam::new(2.0)?;
    let mut cases = 0;
    let mut bad = 0;
    for &n in &opts.ns {
        for w in weights(n, Flavor::Classical, opts.max_entry) {
            for xi in enumerate(&w) {
                let l = xi.lcoords();
                for p in 1..=n / 2 {
                    if l.l(2 * p, p) == Half::ZERO {
                        cases += 1;
                        if coeff_c(&xi, p, q)? != 0.0 {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(CheckResult {
        name: "vanishing".into(),
        pass: bad == 0,
        cases,
        detail: format!("{bad} nonzero values"),
    })
}
