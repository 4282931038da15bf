//! Dense complex helpers on top of nalgebra.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::repmatrix::CMatrix;

/// Eigenvalues from the complex Schur form, in Schur order.
pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let (_, t) = schur(m);
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Complex Schur form `m = Q T Q^H`.
///
/// The QR iteration can stall on spectra symmetric about the origin (a real
/// skew-like tridiagonal with eigenvalues `0, +-i` is enough). When it does,
/// the decomposition is retried on `m + cI` for a few fixed complex shifts
/// `c`, which leaves `Q` unchanged and moves `T` by `cI`.
pub fn schur(m: &CMatrix) -> (CMatrix, CMatrix) {
    let d = m.nrows();
    let iters = 100 * d.max(10);
    if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, iters) {
        return s.unpack();
    }
    let scale = m.norm().max(f64::MIN_POSITIVE);
    for (re, im) in [(0.31, 0.73), (-0.57, 0.29), (0.13, -0.91), (1.7, 2.3)] {
        let c = Complex64::new(re, im) * scale;
        let shifted = m + CMatrix::identity(d, d) * c;
        if let Some(s) = Schur::try_new(shifted, f64::EPSILON, iters) {
            let (q, mut t) = s.unpack();
            for i in 0..d {
                t[(i, i)] -= c;
            }
            return (q, t);
        }
    }
    panic!("Schur decomposition failed to converge for a {d}x{d} matrix");
}

/// Eigen-decomposition `m = W diag(lambda) W^{-1}` as `(Q, Y, lambda)` with
/// `W = Q Y`, `Q` unitary and `Y` unit-column upper triangular. Assumes the
/// eigenvalues are distinct.
pub fn schur_eigenvectors(m: &CMatrix) -> (CMatrix, CMatrix, Vec<Complex64>) {
    let d = m.nrows();
    let (q, t) = schur(m);
    let lambda: Vec<Complex64> = (0..d).map(|i| t[(i, i)]).collect();
    let mut y = DMatrix::<Complex64>::zeros(d, d);
    for a in 0..d {
        y[(a, a)] = Complex64::new(1.0, 0.0);
        for b in (0..a).rev() {
            let mut s = Complex64::new(0.0, 0.0);
            for c in b + 1..=a {
                s += t[(b, c)] * y[(c, a)];
            }
            y[(b, a)] = -s / (t[(b, b)] - lambda[a]);
        }
        let norm = y.column(a).norm();
        y.column_mut(a).unscale_mut(norm);
    }
    (q, y, lambda)
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.norm()
}
