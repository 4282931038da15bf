//! Generator matrices `T(I_{k,k-1})`, `k = 2..n`, for the four kinds of
//! representation: classical type `T_m`, nonclassical type `T_{eps,m}`, the
//! one-dimensional ones, and the auxiliary reducible `T'_m`.
//!
//! Generator `I_{k,k-1}` with odd `k = 2p+1` moves entries of row `2p`;
//! with even `k = 2p` it moves entries of row `2p-1` and carries a diagonal
//! part. A raising or lowering term is emitted only when the shifted tableau is
//! valid for the basis flavor, which is also what keeps the literal formulas
//! away from their `0/0` points.

pub mod coeffs;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::{enumerate, index_of, row_len, Flavor, GtPattern, Half, HighestWeight, SignVector};
use crate::qnum::{qnumber, qnumber_plus, QParam};

pub use coeffs::{coeff_a, coeff_b, coeff_c, coeff_chat, coeff_d};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepKind {
    #[serde(rename = "classical")]
    Classical,
    #[serde(rename = "nonclassical")]
    Nonclassical,
    #[serde(rename = "one-dim")]
    OneDim,
    #[serde(rename = "prime")]
    Prime,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepKind::Classical => "classical",
            RepKind::Nonclassical => "nonclassical",
            RepKind::OneDim => "one-dim",
            RepKind::Prime => "prime",
        })
    }
}

impl FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(RepKind::Classical),
            "nonclassical" => Ok(RepKind::Nonclassical),
            "one-dim" | "onedim" => Ok(RepKind::OneDim),
            "prime" => Ok(RepKind::Prime),
            _ => Err(Error::Parse(format!("unknown representation kind {s:?}"))),
        }
    }
}

/// Everything needed to build one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct RepSpec {
    weight: HighestWeight,
    signs: Option<SignVector>,
    q: QParam,
    kind: RepKind,
}

impl RepSpec {
    pub fn new(weight: HighestWeight, signs: Option<SignVector>, q: QParam, kind: RepKind) -> Result<Self> {
        let n = weight.n();
        if let Some(s) = &signs {
            if s.n() != n {
                return Err(Error::InvalidSigns(format!("sign vector is for n = {}, weight for n = {n}", s.n())));
            }
        }
        match kind {
            RepKind::Classical => {
                if weight.flavor() != Flavor::Classical {
                    return Err(Error::InvalidSpec("classical kind needs a classical weight".into()));
                }
                if signs.is_some() {
                    return Err(Error::InvalidSpec("classical representations take no signs".into()));
                }
            }
            RepKind::Nonclassical | RepKind::OneDim => {
                if weight.flavor() != Flavor::Nonclassical {
                    return Err(Error::InvalidSpec(format!("{kind} kind needs a nonclassical weight")));
                }
                if signs.is_none() {
                    return Err(Error::InvalidSpec(format!("{kind} kind needs a sign vector")));
                }
                if kind == RepKind::OneDim && weight.entries().iter().any(|&e| e != Half::HALF) {
                    return Err(Error::InvalidSpec("one-dim kind needs weight (1/2, ..., 1/2)".into()));
                }
            }
            RepKind::Prime => {
                // Basis is the classical one; the weight must also be nonclassical-dominant.
                if !weight.is_half_integral() || weight.with_flavor(Flavor::Nonclassical).is_err() {
                    return Err(Error::InvalidSpec(
                        "prime kind needs half-integral weight entries with last entry >= 1/2".into(),
                    ));
                }
                if signs.is_none() {
                    return Err(Error::InvalidSpec("prime kind needs the even signs eps_2, eps_4, ...".into()));
                }
                return Ok(RepSpec { weight: weight.with_flavor(Flavor::Classical)?, signs, q, kind });
            }
        }
        Ok(RepSpec { weight, signs, q, kind })
    }

    pub fn classical(weight: HighestWeight, q: QParam) -> Result<Self> {
        Self::new(weight, None, q, RepKind::Classical)
    }

    pub fn nonclassical(weight: HighestWeight, signs: SignVector, q: QParam) -> Result<Self> {
        Self::new(weight, Some(signs), q, RepKind::Nonclassical)
    }

    pub fn one_dim(n: usize, signs: SignVector, q: QParam) -> Result<Self> {
        let w = HighestWeight::new(n, vec![Half::HALF; row_len(n)], Flavor::Nonclassical)?;
        Self::new(w, Some(signs), q, RepKind::OneDim)
    }

    /// Only the even components of `signs` are used.
    pub fn prime(weight: HighestWeight, signs: SignVector, q: QParam) -> Result<Self> {
        Self::new(weight, Some(signs), q, RepKind::Prime)
    }

    pub fn weight(&self) -> &HighestWeight {
        &self.weight
    }

    pub fn signs(&self) -> Option<&SignVector> {
        self.signs.as_ref()
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    /// Flavor of the tableaux labelling the basis.
    pub fn basis_flavor(&self) -> Flavor {
        match self.kind {
            RepKind::Classical | RepKind::Prime => Flavor::Classical,
            RepKind::Nonclassical | RepKind::OneDim => Flavor::Nonclassical,
        }
    }

    fn sign(&self, k: usize) -> f64 {
        self.signs.as_ref().map_or(1.0, |s| s.get(k) as f64)
    }
}

/// Generator matrices of one representation, `generators[k - 2]` being
/// `T(I_{k,k-1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrices {
    n: usize,
    q: QParam,
    generators: Vec<CMatrix>,
    basis: Vec<GtPattern>,
    spec: Option<RepSpec>,
}

impl RepMatrices {
    /// Assembles a representation from raw matrices, e.g. one read from a
    /// file or a direct sum built by hand. `basis` may be empty.
    pub fn from_parts(
        n: usize,
        q: QParam,
        generators: Vec<CMatrix>,
        basis: Vec<GtPattern>,
        spec: Option<RepSpec>,
    ) -> Result<Self> {
        if n < 3 || generators.len() != n - 1 {
            return Err(Error::DimensionMismatch(format!(
                "need {} generators for n = {n}, got {}",
                n.saturating_sub(1),
                generators.len()
            )));
        }
        let d = generators[0].nrows();
        if generators.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::DimensionMismatch("generators must be square and of equal size".into()));
        }
        if !basis.is_empty() && basis.len() != d {
            return Err(Error::DimensionMismatch(format!("basis has {} vectors, matrices are {d}x{d}", basis.len())));
        }
        Ok(RepMatrices { n, q, generators, basis, spec })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.generators[0].nrows()
    }

    /// `T(I_{k,k-1})` for `2 <= k <= n`.
    pub fn generator(&self, k: usize) -> &CMatrix {
        &self.generators[k - 2]
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn generators_mut(&mut self) -> &mut [CMatrix] {
        &mut self.generators
    }

    pub fn basis(&self) -> &[GtPattern] {
        &self.basis
    }

    pub fn spec(&self) -> Option<&RepSpec> {
        self.spec.as_ref()
    }

    /// Block-diagonal direct sum; the result carries no basis labels.
    pub fn direct_sum(&self, other: &RepMatrices) -> Result<RepMatrices> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("direct sum of representations of different algebras".into()));
        }
        let (a, b) = (self.dim(), other.dim());
        let generators = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(x, y)| {
                let mut m = CMatrix::zeros(a + b, a + b);
                m.view_mut((0, 0), (a, a)).copy_from(x);
                m.view_mut((a, a), (b, b)).copy_from(y);
                m
            })
            .collect();
        RepMatrices::from_parts(self.n, self.q, generators, Vec::new(), None)
    }
}

/// Builds whichever representation `spec` describes.
pub fn build(spec: &RepSpec) -> Result<RepMatrices> {
    match spec.kind {
        RepKind::Classical => build_classical(spec),
        RepKind::Nonclassical => build_nonclassical(spec),
        RepKind::OneDim => build_onedim(spec),
        RepKind::Prime => build_prime(spec),
    }
}

pub fn build_classical(spec: &RepSpec) -> Result<RepMatrices> {
    expect_kind(spec, RepKind::Classical)?;
    build_gt(spec)
}

pub fn build_nonclassical(spec: &RepSpec) -> Result<RepMatrices> {
    expect_kind(spec, RepKind::Nonclassical)?;
    build_gt(spec)
}

pub fn build_prime(spec: &RepSpec) -> Result<RepMatrices> {
    expect_kind(spec, RepKind::Prime)?;
    build_gt(spec)
}

/// `T(I_{k+1,k}) = eps_{k+1} / (q^{1/2} - q^{-1/2})` on a single vector.
pub fn build_onedim(spec: &RepSpec) -> Result<RepMatrices> {
    expect_kind(spec, RepKind::OneDim)?;
    let n = spec.n();
    let scale = 1.0 / spec.q.half_gap();
    let generators = (2..=n)
        .map(|k| CMatrix::from_element(1, 1, Complex64::new(spec.sign(k) * scale, 0.0)))
        .collect();
    let basis = enumerate(&spec.weight);
    RepMatrices::from_parts(n, spec.q, generators, basis, Some(spec.clone()))
}

fn expect_kind(spec: &RepSpec, kind: RepKind) -> Result<()> {
    if spec.kind == kind {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("expected a {kind} spec, got {}", spec.kind)))
    }
}

fn build_gt(spec: &RepSpec) -> Result<RepMatrices> {
    let n = spec.n();
    let basis = enumerate(&spec.weight);
    let d = basis.len();
    let mut generators = vec![CMatrix::zeros(d, d); n - 1];
    for (col, xi) in basis.iter().enumerate() {
        for k in 2..=n {
            let m = &mut generators[k - 2];
            for (target, v) in column_entries(spec, xi, k)? {
                let row = index_of(&target, &basis)?;
                m[(row, col)] += v;
            }
        }
    }
    RepMatrices::from_parts(n, spec.q, generators, basis, Some(spec.clone()))
}

/// Nonzero entries of column `|xi>` of `T(I_{k,k-1})`, as (target tableau, value).
fn column_entries(spec: &RepSpec, xi: &GtPattern, k: usize) -> Result<Vec<(GtPattern, Complex64)>> {
    let q = spec.q;
    let re = |x: f64| Complex64::new(x, 0.0);
    let classical = spec.kind == RepKind::Classical;
    let nonclassical = spec.kind == RepKind::Nonclassical;
    let l = xi.lcoords();
    let mut out = Vec::new();

    if k % 2 == 1 {
        let p = (k - 1) / 2;
        let at_half = xi.m(2 * p, p) == Half::HALF;
        for j in 1..=p {
            let lj = l.l(2 * p, j).to_f64();
            let den = if classical {
                2.0 * (lj * q.h()).cosh()
            } else {
                2.0 * (lj * q.h()).sinh()
            };
            if den == 0.0 {
                return Err(Error::ZeroDenominator(format!("q^l - q^-l at {xi}")));
            }
            if let Some(up) = xi.shift(2 * p, j, 1) {
                out.push((up, re(coeff_a(xi, p, j, q)? / den)));
            }
            let lowered = xi.shift(2 * p, j, -1);
            if nonclassical && j == p && at_half {
                // The lowering sum stops at p-1 here; the shift is invalid anyway.
                debug_assert!(lowered.is_none());
                continue;
            }
            if let Some(down) = lowered {
                let a = coeff_a(&down, p, j, q)?;
                out.push((down, re(-a / den)));
            }
        }
        if nonclassical && at_half {
            let v = spec.sign(2 * p + 1) * coeff_d(xi, p, q)? / q.half_gap();
            out.push((xi.clone(), re(v)));
        }
    } else {
        let p = k / 2;
        let bracket = |a: f64| if classical { qnumber(a, q) } else { qnumber_plus(a, q) };
        for j in 1..p {
            let lj = l.l(2 * p - 1, j).to_f64();
            let twice = qnumber(2.0 * lj - 1.0, q);
            if let Some(up) = xi.shift(2 * p - 1, j, 1) {
                let den = twice * bracket(lj);
                if den == 0.0 {
                    return Err(Error::ZeroDenominator(format!("raising term of I_{k},{} at {xi}", k - 1)));
                }
                out.push((up, re(coeff_b(xi, p, j, q)? / den)));
            }
            if let Some(down) = xi.shift(2 * p - 1, j, -1) {
                let den = twice * bracket(lj - 1.0);
                if den == 0.0 {
                    return Err(Error::ZeroDenominator(format!("lowering term of I_{k},{} at {xi}", k - 1)));
                }
                let b = coeff_b(&down, p, j, q)?;
                out.push((down, re(-b / den)));
            }
        }
        let diag = if classical {
            Complex64::new(0.0, coeff_c(xi, p, q)?)
        } else {
            re(spec.sign(2 * p) * coeff_chat(xi, p, q)?)
        };
        if diag != Complex64::new(0.0, 0.0) {
            out.push((xi.clone(), diag));
        }
    }
    Ok(out)
}
