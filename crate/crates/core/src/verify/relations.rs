//! The defining relations of `U'_q(so_n)` checked as matrix identities.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::repmatrix::{CMatrix, RepMatrices};

/// Which relation a residual belongs to. `i` is the row index of the lower
/// generator's upper end: family (1) and (2) relate `I_{i+1,i}` and `I_{i,i-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    /// `I_{i+1,i} I_{i,i-1}^2 - [2] I_{i,i-1} I_{i+1,i} I_{i,i-1} + I_{i,i-1}^2 I_{i+1,i} = -I_{i+1,i}`
    First { i: usize },
    /// `I_{i+1,i}^2 I_{i,i-1} - [2] I_{i+1,i} I_{i,i-1} I_{i+1,i} + I_{i,i-1} I_{i+1,i}^2 = -I_{i,i-1}`
    Second { i: usize },
    /// `[I_{i,i-1}, I_{j,j-1}] = 0` for `|i - j| > 1`
    Commute { i: usize, j: usize },
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationId::First { i } => write!(f, "(1) i={i}"),
            RelationId::Second { i } => write!(f, "(2) i={i}"),
            RelationId::Commute { i, j } => write!(f, "(3) i={i},j={j}"),
        }
    }
}

impl Serialize for RelationId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationResidual {
    pub relation: RelationId,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub residuals: Vec<RelationResidual>,
    pub max_residual: f64,
    pub worst: Option<RelationId>,
    pub tolerance: f64,
    pub pass: bool,
}

fn relative(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm())
}

/// Residual of every relation, `||LHS - RHS||_F / (1 + ||RHS||_F)`.
pub fn check_relations(rep: &RepMatrices, tol: f64) -> Result<RelationReport> {
    let n = rep.n();
    let d = rep.dim();
    if rep.generators().len() != n - 1 || rep.generators().iter().any(|m| m.shape() != (d, d)) {
        return Err(Error::DimensionMismatch("generator list does not match n".into()));
    }
    let two = rep.q().two();
    let mut residuals = Vec::new();
    for i in 2..n {
        let a = rep.generator(i + 1);
        let b = rep.generator(i);
        let ab = a * b;
        let ba = b * a;
        let first = &ab * b - (b * &ab).scale(two) + b * &ba;
        residuals.push(RelationResidual { relation: RelationId::First { i }, residual: relative(&first, &-a) });
        let second = a * &ab - (&ab * a).scale(two) + &ba * a;
        residuals.push(RelationResidual { relation: RelationId::Second { i }, residual: relative(&second, &-b) });
    }
    for i in 2..=n {
        for j in i + 2..=n {
            let (x, y) = (rep.generator(i), rep.generator(j));
            let comm = x * y - y * x;
            residuals.push(RelationResidual {
                relation: RelationId::Commute { i, j },
                residual: comm.norm(),
            });
        }
    }
    let (worst, max_residual) = residuals
        .iter()
        .max_by(|a, b| a.residual.total_cmp(&b.residual))
        .map(|r| (Some(r.relation), r.residual))
        .unwrap_or((None, 0.0));
    Ok(RelationReport { residuals, max_residual, worst, tolerance: tol, pass: max_residual < tol })
}
