//! q-numbers and the bracket variants used by the coefficient formulas.
//!
//! Everything is evaluated through `h = ln q`, so that `[a] = sinh(ah) / sinh(h)`
//! and `[a]_+ = cosh(ah) / sinh(h)`. This is the same rational expression in
//! `q^{1/2}` as the textbook definition but keeps full relative precision as
//! `q` approaches 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::Flavor;

/// The deformation parameter. Real, positive and different from 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct QParam {
    q: f64,
    h: f64,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 || q == 1.0 {
            return Err(Error::InvalidQ(q));
        }
        Ok(QParam { q, h: q.ln() })
    }

    /// Builds `q = e^h`.
    pub fn from_h(h: f64) -> Result<Self> {
        let q = h.exp();
        let mut p = Self::new(q)?;
        p.h = h;
        Ok(p)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.q
    }

    /// `h` with `q = e^h`.
    #[inline]
    pub fn h(self) -> f64 {
        self.h
    }

    /// `q + q^{-1}`, the coefficient of the middle term in the cubic relations.
    #[inline]
    pub fn two(self) -> f64 {
        2.0 * self.h.cosh()
    }

    /// `q^{1/2} - q^{-1/2}`, the scale of all nonclassical-type operators.
    #[inline]
    pub fn half_gap(self) -> f64 {
        2.0 * (0.5 * self.h).sinh()
    }
}

impl TryFrom<f64> for QParam {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        QParam::new(q)
    }
}

impl From<QParam> for f64 {
    fn from(q: QParam) -> f64 {
        q.q
    }
}

/// `[a] = (q^a - q^{-a}) / (q - q^{-1})`.
#[inline]
pub fn qnumber(a: f64, q: QParam) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    (a * q.h).sinh() / q.h.sinh()
}

/// `[a]_+ = (q^a + q^{-a}) / (q - q^{-1})`. Never zero for admissible `q`.
#[inline]
pub fn qnumber_plus(a: f64, q: QParam) -> f64 {
    (a * q.h).cosh() / q.h.sinh()
}

/// Denominator of the even-row raising and lowering terms:
/// `q^l + q^{-l}` for classical type, `q^l - q^{-l}` for nonclassical type.
pub fn denom_even(l: f64, q: QParam, flavor: Flavor) -> Result<f64> {
    match flavor {
        Flavor::Classical => Ok(2.0 * (l * q.h).cosh()),
        Flavor::Nonclassical => {
            if l == 0.0 {
                return Err(Error::ZeroDenominator("q^l - q^{-l} at l = 0".into()));
            }
            Ok(2.0 * (l * q.h).sinh())
        }
    }
}
