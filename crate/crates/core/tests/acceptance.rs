//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Grids, dimension counts and relation residuals are recomputed here from
//! first principles (brute-force filters over candidate boxes, direct matrix
//! products) rather than taken from the library.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use qsorep::patterns::{enumerate, Flavor, GtPattern, Half, HighestWeight, SignVector};
use qsorep::qnum::QParam;
use qsorep::repmatrix::{build, coeff_c, CMatrix, RepMatrices, RepSpec};
use qsorep::verify::{
    check_relations, commutant_dimension, commutant_dimension_dense, decompose_prime, match_block_to_nonclassical,
    spectral_fingerprint,
};

const NS: [usize; 4] = [3, 4, 5, 6];
const QS: [f64; 2] = [1.2, 2.0];
const MAX2: i32 = 5; // entries up to 5/2, doubled

// ---------------------------------------------------------------------------
// independent grid

/// Dominant weights by brute force over the box of doubled entries.
fn box_weights(n: usize, nonclassical: bool) -> Vec<Vec<i32>> {
    let len = n / 2;
    let mut out = Vec::new();
    let total = (2 * MAX2 + 1).pow(len as u32);
    for code in 0..total {
        let mut c = code;
        let w: Vec<i32> = (0..len)
            .map(|_| {
                let v = c % (2 * MAX2 + 1) - MAX2;
                c /= 2 * MAX2 + 1;
                v
            })
            .collect();
        let ok = if nonclassical {
            w.iter().all(|&x| x > 0 && x % 2 != 0) && w.windows(2).all(|p| p[0] >= p[1])
        } else {
            let same = w.iter().all(|&x| (x - w[0]) % 2 == 0);
            let desc = w.windows(2).all(|p| p[0] >= p[1]);
            let last = if n % 2 == 1 {
                w[len - 1] >= 0
            } else {
                len < 2 || w[len - 2] >= w[len - 1].abs()
            };
            same && desc && last && w[0] >= 0
        };
        if ok {
            out.push(w);
        }
    }
    out
}

/// A reproducible sample of 8 sign vectors from a small LCG.
fn sample_signs(n: usize) -> Vec<Vec<i8>> {
    let m = n - 1;
    let total = 1u64 << m;
    if n <= 4 {
        return (0..total).map(|b| bits_to_signs(b, m)).collect();
    }
    let mut state = 12345u64 + n as u64;
    let mut chosen = BTreeSet::new();
    while chosen.len() < 8 {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        chosen.insert((state >> 33) % total);
    }
    chosen.into_iter().map(|b| bits_to_signs(b, m)).collect()
}

fn bits_to_signs(bits: u64, m: usize) -> Vec<i8> {
    (0..m).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect()
}

struct Case {
    label: String,
    n: usize,
    q: f64,
    nonclassical: bool,
    weight: Vec<i32>,
    rep: RepMatrices,
}

fn relation_grid() -> Vec<Case> {
    let mut cases = Vec::new();
    for q in QS {
        let qp = QParam::new(q).unwrap();
        for n in NS {
            for w in box_weights(n, false) {
                let hw = HighestWeight::from_doubled(n, &w, Flavor::Classical).unwrap();
                let rep = build(&RepSpec::classical(hw, qp).unwrap()).unwrap();
                cases.push(Case { label: format!("n={n} classical {w:?} q={q}"), n, q, nonclassical: false, weight: w, rep });
            }
            for w in box_weights(n, true) {
                for eps in sample_signs(n) {
                    let hw = HighestWeight::from_doubled(n, &w, Flavor::Nonclassical).unwrap();
                    let s = SignVector::new(n, eps.clone()).unwrap();
                    let rep = build(&RepSpec::nonclassical(hw, s, qp).unwrap()).unwrap();
                    cases.push(Case {
                        label: format!("n={n} nonclassical {w:?} {eps:?} q={q}"),
                        n,
                        q,
                        nonclassical: true,
                        weight: w.clone(),
                        rep,
                    });
                }
            }
        }
    }
    cases
}

// ---------------------------------------------------------------------------
// independent oracles

/// Relations written out directly, relative Frobenius residual.
fn residual(rep: &RepMatrices, q: f64) -> f64 {
    let n = rep.n();
    let two = q + 1.0 / q;
    let rel = |lhs: CMatrix, rhs: CMatrix| (&lhs - &rhs).norm() / (1.0 + rhs.norm());
    let mut worst: f64 = 0.0;
    for i in 2..n {
        let a = rep.generator(i + 1).clone();
        let b = rep.generator(i).clone();
        let r1 = &a * &b * &b - (&b * &a * &b) * Complex64::new(two, 0.0) + &b * &b * &a;
        worst = worst.max(rel(r1, -a.clone()));
        let r2 = &a * &a * &b - (&a * &b * &a) * Complex64::new(two, 0.0) + &b * &a * &a;
        worst = worst.max(rel(r2, -b.clone()));
    }
    for i in 2..=n {
        for j in i + 2..=n {
            let (x, y) = (rep.generator(i), rep.generator(j));
            worst = worst.max((x * y - y * x).norm());
        }
    }
    worst
}

/// Number of tableaux under `top`, by filtering the full candidate box.
fn brute_force_dim(n: usize, top: &[i32], nonclassical: bool) -> usize {
    let shapes: Vec<usize> = (2..n).rev().map(|k| k / 2).collect();
    let cells: usize = shapes.iter().sum();
    let bound = top.iter().map(|x| x.abs()).max().unwrap_or(0);
    let parity = top[0].rem_euclid(2);
    let values: Vec<i32> = (-bound..=bound).filter(|v| v.rem_euclid(2) == parity).collect();
    let mut idx = vec![0usize; cells];
    let mut count = 0;
    loop {
        let flat: Vec<i32> = idx.iter().map(|&i| values[i]).collect();
        let mut rows: Vec<Vec<i32>> = vec![top.to_vec()];
        let mut off = 0;
        for &len in &shapes {
            rows.push(flat[off..off + len].to_vec());
            off += len;
        }
        if interlaced(n, &rows, nonclassical) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == cells {
                return count;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Betweenness, rows top first (row k at index n - k), doubled entries.
fn interlaced(n: usize, rows: &[Vec<i32>], nonclassical: bool) -> bool {
    for k in 2..n {
        let above = &rows[n - k - 1];
        let row = &rows[n - k];
        for (j, &x) in row.iter().enumerate() {
            let last = j + 1 == row.len();
            let lo = if !last {
                above[j + 1]
            } else if k % 2 == 0 {
                if nonclassical {
                    1
                } else {
                    -above[j]
                }
            } else if nonclassical {
                above[j + 1]
            } else {
                above[j + 1].abs()
            };
            if x < lo || x > above[j] {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// criteria

struct Outcome {
    pass: bool,
    detail: String,
}

fn crit1(grid: &[Case]) -> Outcome {
    let mut worst = (0.0f64, String::new());
    let mut disagree = 0.0f64;
    for c in grid {
        let lib = check_relations(&c.rep, 1e-9).unwrap();
        let own = residual(&c.rep, c.q);
        disagree = disagree.max((lib.max_residual - own).abs());
        if own >= worst.0 {
            worst = (own, c.label.clone());
        }
    }
    Outcome {
        pass: worst.0 < 1e-9 && disagree < 1e-12,
        detail: format!("{} reps, max residual {:.2e} at {}", grid.len(), worst.0, worst.1),
    }
}

fn crit2() -> Outcome {
    let mut worst_value = 0.0f64;
    let mut worst_rel = 0.0f64;
    let mut count = 0;
    for q in [1.2f64, 2.0, 4.0] {
        let expected = 1.0 / (q.sqrt() - 1.0 / q.sqrt());
        for n in 3..=7 {
            for bits in 0..1u64 << (n - 1) {
                let eps = bits_to_signs(bits, n - 1);
                let spec = RepSpec::one_dim(n, SignVector::new(n, eps.clone()).unwrap(), QParam::new(q).unwrap()).unwrap();
                let rep = build(&spec).unwrap();
                for k in 2..=n {
                    let v = rep.generator(k)[(0, 0)];
                    let want = eps[k - 2] as f64 * expected;
                    worst_value = worst_value.max((v.re - want).abs() / want.abs() + v.im.abs());
                }
                worst_rel = worst_rel.max(residual(&rep, q));
                count += 1;
            }
        }
    }
    Outcome {
        pass: worst_value < 1e-14 && worst_rel < 1e-13,
        detail: format!("{count} reps, value error {worst_value:.1e}, residual {worst_rel:.1e}"),
    }
}

fn crit3(grid: &[Case]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut max_dim = 0;
    for c in grid.iter().filter(|c| c.rep.dim() <= 200) {
        let d = commutant_dimension(&c.rep, 1e-8).unwrap();
        if c.rep.dim() <= 12 {
            let dense = commutant_dimension_dense(&c.rep, 1e-8).unwrap();
            if dense != d {
                bad.push(format!("{}: dense {dense} vs {d}", c.label));
            }
        }
        if d != 1 {
            bad.push(format!("{} -> {d}", c.label));
        }
        checked += 1;
        max_dim = max_dim.max(c.rep.dim());
    }
    let q = QParam::new(2.0).unwrap();
    let a = build(&RepSpec::one_dim(4, SignVector::new(4, vec![1, 1, 1]).unwrap(), q).unwrap()).unwrap();
    let w = HighestWeight::from_doubled(4, &[3, 1], Flavor::Nonclassical).unwrap();
    let b = build(&RepSpec::nonclassical(w, SignVector::new(4, vec![1, -1, 1]).unwrap(), q).unwrap()).unwrap();
    let sum = commutant_dimension(&a.direct_sum(&b).unwrap(), 1e-8).unwrap();
    if sum != 2 {
        bad.push(format!("direct sum -> {sum}"));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checked} reps irreducible (max dim {max_dim}), direct sum -> {sum}")
        } else {
            bad.join("; ")
        },
    }
}

fn crit4() -> Outcome {
    let mut cases = 0;
    let mut worst_leak = 0.0f64;
    let mut bad = Vec::new();
    for q in QS {
        let qp = QParam::new(q).unwrap();
        for n in [3, 4, 5] {
            let odd_count = (n - 1) / 2;
            for w in box_weights(n, true) {
                for even_bits in 0..1u64 << (n / 2) {
                    let evens = bits_to_signs(even_bits, n / 2);
                    let hw = HighestWeight::from_doubled(n, &w, Flavor::Nonclassical).unwrap();
                    let prime_spec = RepSpec::prime(hw.clone(), SignVector::from_evens(n, &evens).unwrap(), qp).unwrap();
                    let prime = build(&prime_spec).unwrap();
                    let label = format!("n={n} {w:?} evens {evens:?} q={q}");
                    cases += 1;
                    let report = match decompose_prime(&prime, 1e-9) {
                        Ok(r) => r,
                        Err(e) => {
                            bad.push(format!("{label}: {e}"));
                            continue;
                        }
                    };
                    worst_leak = worst_leak.max(report.invariance_residual);
                    if report.blocks.len() != 1 << odd_count {
                        bad.push(format!("{label}: {} blocks", report.blocks.len()));
                    }
                    let total: usize = report.blocks.iter().map(|b| b.rep.dim()).sum();
                    if total != brute_force_dim(n, &w, false) || total != prime.dim() {
                        bad.push(format!("{label}: block dims sum to {total}"));
                    }
                    let block_dim = brute_force_dim(n, &w, true);
                    let mut odd_parts = BTreeSet::new();
                    for b in &report.blocks {
                        let mut hits = Vec::new();
                        for bits in 0..1u64 << (n - 1) {
                            let eps = bits_to_signs(bits, n - 1);
                            let cand = build(&RepSpec::nonclassical(hw.clone(), SignVector::new(n, eps.clone()).unwrap(), qp).unwrap()).unwrap();
                            if cand.dim() == b.rep.dim() && match_block_to_nonclassical(&b.rep, &cand, 1e-8) {
                                hits.push(eps);
                            }
                        }
                        if b.rep.dim() != block_dim || hits.len() != 1 {
                            bad.push(format!("{label}: block of dim {} matched {hits:?}", b.rep.dim()));
                            continue;
                        }
                        let eps = &hits[0];
                        let even_part: Vec<i8> = (2..=n).step_by(2).map(|k| eps[k - 2]).collect();
                        if even_part != evens {
                            bad.push(format!("{label}: matched even signs {even_part:?}"));
                        }
                        odd_parts.insert((3..=n).step_by(2).map(|k| eps[k - 2]).collect::<Vec<i8>>());
                    }
                    if odd_parts.len() != 1 << odd_count {
                        bad.push(format!("{label}: {} distinct odd-sign assignments", odd_parts.len()));
                    }
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{cases} T' reps, max leakage {worst_leak:.1e}")
        } else {
            bad.join("; ")
        },
    }
}

fn crit5(grid: &[Case]) -> Outcome {
    let chosen: Vec<&Case> = grid.iter().filter(|c| c.n <= 4 && c.q == 2.0).collect();
    let prints: Vec<_> = chosen.iter().map(|c| spectral_fingerprint(&c.rep)).collect();
    let mut clashes = Vec::new();
    for i in 0..prints.len() {
        for j in 0..i {
            if !prints[i].distinct_from(&prints[j]) {
                clashes.push(format!("{} ~ {}", chosen[i].label, chosen[j].label));
            }
        }
    }
    Outcome {
        pass: clashes.is_empty(),
        detail: if clashes.is_empty() {
            format!("{} reps pairwise distinct", prints.len())
        } else {
            clashes.join("; ")
        },
    }
}

fn crit6(grid: &[Case]) -> Outcome {
    let mut seen = BTreeSet::new();
    let mut bad = Vec::new();
    for c in grid {
        if !seen.insert((c.n, c.nonclassical, c.weight.clone())) {
            continue;
        }
        let flavor = if c.nonclassical { Flavor::Nonclassical } else { Flavor::Classical };
        let hw = HighestWeight::from_doubled(c.n, &c.weight, flavor).unwrap();
        let lib = enumerate(&hw).len();
        let oracle = brute_force_dim(c.n, &c.weight, c.nonclassical);
        if lib != oracle || c.rep.dim() != oracle {
            bad.push(format!("{}: {lib} vs {oracle}", c.label));
        }
    }
    for j2 in 0..=MAX2 {
        let hw = HighestWeight::from_doubled(3, &[j2], Flavor::Classical).unwrap();
        if enumerate(&hw).len() as i32 != j2 + 1 {
            bad.push(format!("so_3 ({j2}/2)"));
        }
    }
    let so5 = enumerate(&HighestWeight::from_doubled(5, &[2, 0], Flavor::Classical).unwrap()).len();
    if so5 != 5 {
        bad.push(format!("so_5 (1,0) -> {so5}"));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{} weights match, so_5 (1,0) -> {so5}", seen.len()) } else { bad.join("; ") },
    }
}

fn crit7() -> Outcome {
    let q = 1.0 + 1e-4;
    let hw = HighestWeight::from_doubled(3, &[2], Flavor::Classical).unwrap();
    let rep = build(&RepSpec::classical(hw, QParam::new(q).unwrap()).unwrap()).unwrap();
    // q -> 1: I_21 = diag(i m), I_32 raises m with sqrt((j+m+1)(j-m))/2 and
    // lowers it with -sqrt((j+m)(j-m+1))/2, j = 1, m = -1, 0, 1.
    let j = 1.0;
    let ms = [-1.0, 0.0, 1.0];
    let mut limit21 = CMatrix::zeros(3, 3);
    let mut limit32 = CMatrix::zeros(3, 3);
    for (c, &m) in ms.iter().enumerate() {
        limit21[(c, c)] = Complex64::new(0.0, m);
        if c + 1 < 3 {
            limit32[(c + 1, c)] = Complex64::new(((j + m + 1.0) * (j - m)).sqrt() / 2.0, 0.0);
        }
        if c > 0 {
            limit32[(c - 1, c)] = Complex64::new(-((j + m) * (j - m + 1.0)).sqrt() / 2.0, 0.0);
        }
    }
    let e21 = (rep.generator(2) - &limit21).map(|z| z.norm()).max();
    let e32 = (rep.generator(3) - &limit32).map(|z| z.norm()).max();

    let h = 1e-4;
    let qp = QParam::from_h(h).unwrap();
    let rep1 = build(&RepSpec::one_dim(3, SignVector::new(3, vec![1, 1]).unwrap(), qp).unwrap()).unwrap();
    let value = rep1.generator(2)[(0, 0)].re;
    let closed = 1.0 / (2.0 * (h / 2.0).sinh());
    let closed_err = (value - closed).abs() / closed;
    let scaled = value * h;
    let pass = e21 < 1e-3 && e32 < 1e-3 && closed_err < 1e-12 && (scaled - 1.0).abs() < 0.01;
    Outcome {
        pass,
        detail: format!(
            "entry errors {e21:.1e}, {e32:.1e}; one-dim h*value = {scaled:.8} (closed-form error {closed_err:.1e})"
        ),
    }
}

fn crit8() -> Outcome {
    let q = QParam::new(2.0).unwrap();
    let mut zero_l = 0;
    let mut bad = Vec::new();
    for n in NS {
        for w in box_weights(n, false) {
            let hw = HighestWeight::from_doubled(n, &w, Flavor::Classical).unwrap();
            for xi in enumerate(&hw) {
                for p in 1..=n / 2 {
                    // l_{p,2p} = m_{p,2p} + p - p
                    if xi.m(2 * p, p) == Half::ZERO {
                        zero_l += 1;
                        let c = coeff_c(&xi, p, q).unwrap();
                        if c != 0.0 || c.is_nan() {
                            bad.push(show(&xi, p, c));
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && zero_l > 0,
        detail: if bad.is_empty() { format!("{zero_l} zero l-coordinates, all exactly 0") } else { bad.join("; ") },
    }
}

fn show(xi: &GtPattern, p: usize, c: f64) -> String {
    format!("{xi} p={p}: {c}")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let grid = relation_grid();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1 relations", Box::new(|| crit1(&grid))),
        ("2 one-dimensional", Box::new(crit2)),
        ("3 irreducibility", Box::new(|| crit3(&grid))),
        ("4 T' decomposition", Box::new(crit4)),
        ("5 nonequivalence", Box::new(|| crit5(&grid))),
        ("6 dimension oracle", Box::new(|| crit6(&grid))),
        ("7 classical limit", Box::new(crit7)),
        ("8 vanishing rule", Box::new(crit8)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        let out = check();
        if !out.pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} [{:.1}s]",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
