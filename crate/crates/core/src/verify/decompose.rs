//! Splitting the auxiliary representation `T'` into its invariant subspaces
//! and identifying each piece with a nonclassical-type representation.
//!
//! For each `p = 1..floor((n-1)/2)` the vectors `|xi> - eps_{2p+1} |xi'>`,
//! where `xi'` flips the sign of `m_{p,2p}`, span two invariant subspaces.
//! Doing this for every such `p` at once gives `2^{floor((n-1)/2)}` blocks,
//! indexed by the odd signs `eps_3, eps_5, ...`. Each block is spanned by one
//! vector per tableau with all `m_{p,2p} > 0`, i.e. per nonclassical tableau.

use std::collections::VecDeque;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns::{index_of, Flavor, GtPattern, Half, SignVector};
use crate::repmatrix::{build, CMatrix, RepKind, RepMatrices, RepSpec};

#[derive(Debug, Clone)]
pub struct Block {
    /// Full sign vector: even components from `T'`, odd ones from the split.
    pub signs: SignVector,
    /// The spanning vectors as columns, in the `T'` basis.
    pub vectors: CMatrix,
    /// Generators restricted to the block, labelled by nonclassical tableaux.
    pub rep: RepMatrices,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub blocks: Vec<Block>,
    pub invariance_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockSummary {
    pub signs: SignVector,
    pub dim: usize,
}

impl DecompositionReport {
    pub fn summary(&self) -> Vec<BlockSummary> {
        self.blocks.iter().map(|b| BlockSummary { signs: b.signs.clone(), dim: b.rep.dim() }).collect()
    }
}

fn flip(xi: &GtPattern, p: usize) -> GtPattern {
    let mut rows = xi.rows().to_vec();
    let idx = xi.n() - 2 * p;
    rows[idx][p - 1] = -rows[idx][p - 1];
    GtPattern::new(xi.flavor(), rows).expect("sign flip of m_{p,2p} keeps the tableau valid")
}

pub fn decompose_prime(rep_prime: &RepMatrices, tol: f64) -> Result<DecompositionReport> {
    let spec = rep_prime
        .spec()
        .filter(|s| s.kind() == RepKind::Prime)
        .ok_or_else(|| Error::InvalidSpec("decompose_prime needs a representation built by build_prime".into()))?;
    let n = rep_prime.n();
    let basis = rep_prime.basis();
    let d = rep_prime.dim();
    let ps: Vec<usize> = (1..=(n - 1) / 2).collect();
    let even_signs = spec.signs().expect("prime spec carries signs");

    let seeds: Vec<&GtPattern> = basis.iter().filter(|xi| ps.iter().all(|&p| xi.m(2 * p, p) > Half::ZERO)).collect();
    let labels: Vec<GtPattern> = seeds
        .iter()
        .map(|xi| xi.reflavor(Flavor::Nonclassical).expect("positive T' tableau is a nonclassical tableau"))
        .collect();
    let b = seeds.len();
    let norm2 = (1u64 << ps.len()) as f64;

    let mut blocks = Vec::new();
    let mut worst: f64 = 0.0;
    for bits in 0u32..(1 << ps.len()) {
        let mut signs = even_signs.clone();
        for (i, &p) in ps.iter().enumerate() {
            signs.set(2 * p + 1, if bits >> (ps.len() - 1 - i) & 1 == 0 { 1 } else { -1 });
        }
        let mut v = CMatrix::zeros(d, b);
        for (col, xi) in seeds.iter().enumerate() {
            for flips in 0u32..(1 << ps.len()) {
                let mut t = (*xi).clone();
                let mut coef = 1.0;
                for (i, &p) in ps.iter().enumerate() {
                    if flips >> i & 1 == 1 {
                        t = flip(&t, p);
                        coef *= -(signs.get(2 * p + 1) as f64);
                    }
                }
                v[(index_of(&t, basis)?, col)] += Complex64::new(coef, 0.0);
            }
        }
        // columns have disjoint supports and squared norm 2^P
        let v_pinv = v.adjoint().unscale(norm2);
        let proj = &v * &v_pinv;
        let out = CMatrix::identity(d, d) - &proj;
        let mut gens = Vec::new();
        for m in rep_prime.generators() {
            let leak = (&out * m * &proj).norm();
            let scale = m.norm();
            worst = worst.max(if scale > 0.0 { leak / scale } else { leak });
            gens.push(&v_pinv * m * &v);
        }
        let rep = RepMatrices::from_parts(n, rep_prime.q(), gens, labels.clone(), None)?;
        blocks.push(Block { signs, vectors: v, rep });
    }
    if worst > tol {
        return Err(Error::Leakage { residual: worst, tol });
    }
    Ok(DecompositionReport { blocks, invariance_residual: worst })
}

/// Diagonal `S` with `S M_k S^{-1} = N_k` for all generators, if one exists.
///
/// Off-diagonal entries nonzero in both representations fix ratios
/// `s_a / s_b = N_ab / M_ab`; these are propagated over a spanning forest of
/// the nonzero pattern (one free scale per connected component) and the
/// result is then checked against every entry.
pub fn diagonal_similarity(block: &RepMatrices, candidate: &RepMatrices, tol: f64) -> Option<DVector<Complex64>> {
    if block.dim() != candidate.dim() || block.n() != candidate.n() {
        return None;
    }
    let d = block.dim();
    let biggest = block
        .generators()
        .iter()
        .chain(candidate.generators())
        .flat_map(|m| m.iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    let thr = 1e-12 * biggest;
    // (neighbour, ratio r) meaning s_neighbour = s_self * r
    let mut adj: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); d];
    for (m, nn) in block.generators().iter().zip(candidate.generators()) {
        for a in 0..d {
            for b in 0..d {
                if a != b && m[(a, b)].norm() > thr && nn[(a, b)].norm() > thr {
                    let r = nn[(a, b)] / m[(a, b)];
                    adj[b].push((a, r));
                    adj[a].push((b, r.inv()));
                }
            }
        }
    }
    let mut s: Vec<Option<Complex64>> = vec![None; d];
    for root in 0..d {
        if s[root].is_some() {
            continue;
        }
        s[root] = Some(Complex64::new(1.0, 0.0));
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = s[u].unwrap();
            for &(w, r) in &adj[u] {
                if s[w].is_none() {
                    s[w] = Some(su * r);
                    queue.push_back(w);
                }
            }
        }
    }
    let s = DVector::from_iterator(d, s.into_iter().map(Option::unwrap));
    for (m, nn) in block.generators().iter().zip(candidate.generators()) {
        let conj = CMatrix::from_fn(d, d, |a, b| s[a] * m[(a, b)] / s[b]);
        let err = (conj - nn).norm();
        let scale = nn.norm();
        let bound = if scale > 0.0 { tol * scale } else { tol };
        if err >= bound {
            return None;
        }
    }
    Some(s)
}

/// Whether `block` equals `candidate` up to a diagonal change of basis.
pub fn match_block_to_nonclassical(block: &RepMatrices, candidate: &RepMatrices, tol: f64) -> bool {
    diagonal_similarity(block, candidate, tol).is_some()
}

/// For every block, the sign vectors `eps` whose nonclassical representation
/// `T_{eps,m}` matches it under diagonal similarity. The weight is the one of
/// `rep_prime`; all `2^{n-1}` sign vectors are tried.
pub fn identify_blocks(rep_prime: &RepMatrices, report: &DecompositionReport, tol: f64) -> Result<Vec<Vec<SignVector>>> {
    let spec = rep_prime
        .spec()
        .ok_or_else(|| Error::InvalidSpec("identify_blocks needs the spec of T'".into()))?;
    let weight = spec.weight().with_flavor(Flavor::Nonclassical)?;
    let candidates = SignVector::all(rep_prime.n())
        .map(|s| {
            let c = RepSpec::nonclassical(weight.clone(), s.clone(), rep_prime.q())?;
            Ok((s, build(&c)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report
        .blocks
        .iter()
        .map(|b| {
            candidates
                .iter()
                .filter(|(_, c)| match_block_to_nonclassical(&b.rep, c, tol))
                .map(|(s, _)| s.clone())
                .collect()
        })
        .collect())
}
