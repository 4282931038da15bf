//! Similarity invariants used to tell representations apart.
//!
//! Equal fingerprints do not prove two representations equivalent; different
//! fingerprints prove they are not.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::eigenvalues;
use crate::repmatrix::{CMatrix, RepMatrices};

const ROUND: f64 = 1e-8;
const EIG_TOL: f64 = 1e-6;
const TRACE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// Per generator, the eigenvalues rounded to `1e-8` and sorted by
    /// (real, imaginary).
    pub eigenvalues: Vec<Vec<[f64; 2]>>,
    /// Traces of all words of length 1, 2 and 3 in the generators, in
    /// lexicographic word order.
    pub word_traces: Vec<[f64; 2]>,
}

fn round(x: f64) -> f64 {
    let r = (x / ROUND).round() * ROUND;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn cmp_complex(a: &[f64; 2], b: &[f64; 2]) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    // tr(AB) = sum_ij A_ij B_ji
    a.iter().zip(b.transpose().iter()).map(|(x, y)| x * y).sum()
}

pub fn spectral_fingerprint(rep: &RepMatrices) -> Fingerprint {
    let gens = rep.generators();
    let eigenvalues = gens
        .iter()
        .map(|m| {
            let mut ev: Vec<[f64; 2]> = eigenvalues(m).into_iter().map(|z| [round(z.re), round(z.im)]).collect();
            ev.sort_by(cmp_complex);
            ev
        })
        .collect();
    let mut traces = Vec::new();
    for m in gens {
        traces.push(m.trace());
    }
    let mut pairs = Vec::new();
    for a in gens {
        for b in gens {
            let ab = a * b;
            traces.push(ab.trace());
            pairs.push(ab);
        }
    }
    for ab in &pairs {
        for c in gens {
            traces.push(trace_of_product(ab, c));
        }
    }
    Fingerprint {
        dim: rep.dim(),
        eigenvalues,
        word_traces: traces.into_iter().map(|z| [z.re, z.im]).collect(),
    }
}

impl Fingerprint {
    /// True when the fingerprints certify that the representations are
    /// not equivalent.
    pub fn distinct_from(&self, other: &Fingerprint) -> bool {
        if self.dim != other.dim
            || self.eigenvalues.len() != other.eigenvalues.len()
            || self.word_traces.len() != other.word_traces.len()
        {
            return true;
        }
        let far = |a: &[f64; 2], b: &[f64; 2], tol: f64| {
            let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
            let s = 1.0 + (a[0].powi(2) + a[1].powi(2)).sqrt();
            d > tol * s
        };
        let eig = self
            .eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .any(|(x, y)| x.iter().zip(y).any(|(a, b)| far(a, b, EIG_TOL)));
        eig || self.word_traces.iter().zip(&other.word_traces).any(|(a, b)| far(a, b, TRACE_TOL))
    }
}
