//! Dimension of the commutant `{X : X T(I_k) = T(I_k) X for all k}`.
//!
//! By Schur's lemma a representation over the complex numbers is irreducible
//! exactly when this dimension is 1.
//!
//! Two routes are provided. [`commutant_dimension_dense`] solves the
//! `d^2`-unknown linear system directly with an SVD and is only practical for
//! small `d`. [`commutant_dimension`] reduces the unknowns to `d` first: it
//! picks a random element `H` of the algebra with simple spectrum, so every
//! `X` in the commutant is diagonal in the eigenbasis of `H`. In that basis
//! the remaining conditions read `(x_a - x_b) N_ab = 0` for the transformed
//! generators `N`, whose solution space is the null space of a weighted graph
//! Laplacian.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::schur_eigenvectors;
use crate::repmatrix::{CMatrix, RepMatrices};

pub const DEFAULT_CAP: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-8;
/// Largest dimension accepted by the dense route.
pub const DENSE_LIMIT: usize = 32;

const SMALL: usize = 8;
const ATTEMPTS: u64 = 4;
const GAP_TOL: f64 = 1e-7;

/// Commutant dimension with the default cap.
pub fn commutant_dimension(rep: &RepMatrices, tol: f64) -> Result<usize> {
    commutant_dimension_with_cap(rep, tol, DEFAULT_CAP)
}

pub fn commutant_dimension_with_cap(rep: &RepMatrices, tol: f64, cap: usize) -> Result<usize> {
    let d = rep.dim();
    if d > cap {
        return Err(Error::CapExceeded { dim: d, cap });
    }
    if d <= SMALL {
        return commutant_dimension_dense(rep, tol);
    }
    for attempt in 0..ATTEMPTS {
        if let Some(dim) = spectral_route(rep, tol, attempt) {
            return Ok(dim);
        }
    }
    if d <= DENSE_LIMIT {
        commutant_dimension_dense(rep, tol)
    } else {
        Err(Error::DegenerateSpectrum)
    }
}

/// Nullity of the stacked operator `X -> [X, M_k]`, counting singular values
/// below `tol * sigma_max`.
pub fn commutant_dimension_dense(rep: &RepMatrices, tol: f64) -> Result<usize> {
    let d = rep.dim();
    if d > DENSE_LIMIT {
        return Err(Error::CapExceeded { dim: d, cap: DENSE_LIMIT });
    }
    let d2 = d * d;
    let gens = rep.generators();
    let mut k = CMatrix::zeros(gens.len() * d2, d2);
    // vec(X M - M X) with column-major vec: (M^T (x) I - I (x) M) vec(X)
    for (g, m) in gens.iter().enumerate() {
        let off = g * d2;
        for a in 0..d {
            for b in 0..d {
                // unknown X_{a,b}: enters (XM)_{a,c} via M_{b,c} and (MX)_{r,b} via M_{r,a}
                let col = a + b * d;
                for c in 0..d {
                    k[(off + a + c * d, col)] += m[(b, c)];
                }
                for r in 0..d {
                    k[(off + r + b * d, col)] -= m[(r, a)];
                }
            }
        }
    }
    if k.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Ok(d2);
    }
    let sv = k.singular_values();
    let max = sv.max();
    Ok(sv.iter().filter(|&&s| s < tol * max).count() + d2.saturating_sub(sv.len()))
}

fn spectral_route(rep: &RepMatrices, tol: f64, attempt: u64) -> Option<usize> {
    let d = rep.dim();
    let gens = rep.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + attempt);
    let mut coef = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let mut h = CMatrix::zeros(d, d);
    for m in gens {
        h += m * coef();
    }
    for w in gens.windows(2) {
        h += (&w[0] * &w[1]) * coef();
    }
    let scale = h.norm();
    if scale == 0.0 {
        return None;
    }
    let (q, y, lambda) = schur_eigenvectors(&h);
    for a in 0..d {
        for b in 0..a {
            if (lambda[a] - lambda[b]).norm() < GAP_TOL * scale {
                return None;
            }
        }
    }
    let qh = q.adjoint();
    let mut lap = DMatrix::<f64>::zeros(d, d);
    for m in gens {
        let g = &qh * m * &q * &y;
        let n = y.solve_upper_triangular(&g)?;
        for a in 0..d {
            for b in 0..d {
                if a != b {
                    let w = n[(a, b)].norm_sqr();
                    lap[(a, b)] -= w;
                    lap[(b, a)] -= w;
                    lap[(a, a)] += w;
                    lap[(b, b)] += w;
                }
            }
        }
    }
    let ev = SymmetricEigen::new(lap).eigenvalues;
    let max = ev.max();
    if max <= 0.0 {
        return Some(d);
    }
    Some(ev.iter().filter(|&&e| e < tol * max).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{Flavor, HighestWeight, SignVector};
    use crate::qnum::QParam;
    use crate::repmatrix::{build, RepSpec};

    fn q2() -> QParam {
        QParam::new(2.0).unwrap()
    }

    fn classical(n: usize, doubled: &[i32]) -> RepMatrices {
        let w = HighestWeight::from_doubled(n, doubled, Flavor::Classical).unwrap();
        build(&RepSpec::classical(w, q2()).unwrap()).unwrap()
    }

    fn one_dim(eps: Vec<i8>) -> RepMatrices {
        let n = eps.len() + 1;
        build(&RepSpec::one_dim(n, SignVector::new(n, eps).unwrap(), q2()).unwrap()).unwrap()
    }

    #[test]
    fn one_dim_is_one() {
        assert_eq!(commutant_dimension(&one_dim(vec![1, -1, 1]), DEFAULT_TOL).unwrap(), 1);
    }

    #[test]
    fn so3_vector_is_irreducible() {
        assert_eq!(commutant_dimension(&classical(3, &[2]), DEFAULT_TOL).unwrap(), 1);
    }

    #[test]
    fn direct_sums() {
        let a = one_dim(vec![1, 1, 1]);
        let b = one_dim(vec![-1, 1, 1]);
        assert_eq!(commutant_dimension(&a.direct_sum(&b).unwrap(), DEFAULT_TOL).unwrap(), 2);
        // two copies of the same representation: the commutant is 2x2 matrices
        assert_eq!(commutant_dimension(&a.direct_sum(&a).unwrap(), DEFAULT_TOL).unwrap(), 4);
        let v = classical(4, &[2, 0]);
        let big = v.direct_sum(&classical(4, &[4, 0])).unwrap();
        assert!(big.dim() > SMALL);
        assert_eq!(commutant_dimension(&big, DEFAULT_TOL).unwrap(), 2);
    }

    #[test]
    fn spectral_agrees_with_dense() {
        for rep in [classical(4, &[2, 0]), classical(4, &[4, 2]), classical(5, &[2, 0])] {
            let dense = commutant_dimension_dense(&rep, DEFAULT_TOL).unwrap();
            let spectral = spectral_route(&rep, DEFAULT_TOL, 0).unwrap();
            assert_eq!(dense, spectral);
            assert_eq!(dense, 1);
        }
    }

    #[test]
    fn cap() {
        let rep = classical(4, &[4, 2]);
        assert!(matches!(
            commutant_dimension_with_cap(&rep, DEFAULT_TOL, 3),
            Err(Error::CapExceeded { cap: 3, .. })
        ));
    }
}
