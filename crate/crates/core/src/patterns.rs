//! Gel'fand-Tsetlin tableaux for classical-type and nonclassical-type
//! representations.
//!
//! A tableau for `U'_q(so_n)` is a stack of rows `m_n, m_{n-1}, ..., m_2` where
//! row `k` has `floor(k/2)` entries. Adjacent rows interlace ("betweenness");
//! the interlacing rules differ between the two flavors only at the last entry
//! of each row. Entries are integers or half-integers and are stored doubled
//! (see [`Half`]) so that all combinatorics is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer or half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Half(i32);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    #[inline]
    pub const fn from_doubled(d: i32) -> Self {
        Half(d)
    }

    #[inline]
    pub const fn int(v: i32) -> Self {
        Half(2 * v)
    }

    #[inline]
    pub const fn doubled(self) -> i32 {
        self.0
    }

    #[inline]
    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    #[inline]
    pub fn abs(self) -> Self {
        Half(self.0.abs())
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// True if `self - other` is an integer.
    #[inline]
    pub fn same_class(self, other: Half) -> bool {
        (self.0 - other.0) % 2 == 0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Accepts `"3/2"`, `"-1/2"`, `"1.5"` and integers.
impl FromStr for Half {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an integer or half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => Ok(Half(2 * num)),
                "2" => Ok(Half(num)),
                _ => Err(bad()),
            }
        } else if let Ok(v) = s.parse::<i32>() {
            Ok(Half(2 * v))
        } else {
            let v: f64 = s.parse().map_err(|_| bad())?;
            let d = 2.0 * v;
            if d.fract() != 0.0 || d.abs() > i32::MAX as f64 {
                return Err(bad());
            }
            Ok(Half(d as i32))
        }
    }
}

/// Parses a comma-separated list such as `"3/2,1/2"`.
pub fn parse_halves(s: &str) -> Result<Vec<Half>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Classical,
    Nonclassical,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Classical => "classical",
            Flavor::Nonclassical => "nonclassical",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Flavor::Classical),
            "nonclassical" => Ok(Flavor::Nonclassical),
            _ => Err(Error::Parse(format!("unknown flavor {s:?}"))),
        }
    }
}

/// Number of entries in row `k` of a tableau.
#[inline]
pub const fn row_len(k: usize) -> usize {
    k / 2
}

/// Checks the dominance conditions on a would-be highest weight.
pub fn validate_weight(n: usize, entries: &[Half], flavor: Flavor) -> bool {
    if n < 3 || entries.len() != row_len(n) {
        return false;
    }
    let parity_ok = match flavor {
        Flavor::Classical => entries.iter().all(|e| e.same_class(entries[0])),
        Flavor::Nonclassical => entries.iter().all(|e| !e.is_integral()),
    };
    if !parity_ok || entries.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    let last = entries[entries.len() - 1];
    match (flavor, n % 2) {
        (Flavor::Classical, 1) => last >= Half::ZERO,
        // n = 2p: m_{p-1,2p} >= |m_{p,2p}|, the last entry may be negative.
        (Flavor::Classical, _) => entries.len() < 2 || entries[entries.len() - 2] >= last.abs(),
        (Flavor::Nonclassical, _) => last >= Half::HALF,
    }
}

/// A dominant highest weight `m_n` together with its flavor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HighestWeight {
    n: usize,
    entries: Vec<Half>,
    flavor: Flavor,
}

impl HighestWeight {
    pub fn new(n: usize, entries: Vec<Half>, flavor: Flavor) -> Result<Self> {
        if !validate_weight(n, &entries, flavor) {
            let shown: Vec<String> = entries.iter().map(Half::to_string).collect();
            return Err(Error::InvalidWeight(format!(
                "({}) is not a dominant {flavor} weight for so_{n}",
                shown.join(", ")
            )));
        }
        Ok(HighestWeight { n, entries, flavor })
    }

    /// Convenience constructor from doubled entries.
    pub fn from_doubled(n: usize, doubled: &[i32], flavor: Flavor) -> Result<Self> {
        Self::new(n, doubled.iter().map(|&d| Half(d)).collect(), flavor)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Half] {
        &self.entries
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Result<Self> {
        Self::new(self.n, self.entries.clone(), flavor)
    }

    pub fn is_half_integral(&self) -> bool {
        self.entries.iter().all(|e| !e.is_integral())
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.entries.iter().map(Half::to_string).collect();
        write!(f, "({})", shown.join(","))
    }
}

/// Allowed range `[lo, hi]` of entry `j` (0-based) of row `k` given row `k+1`.
fn entry_bounds(above: &[Half], k: usize, j: usize, flavor: Flavor) -> (Half, Half) {
    let hi = above[j];
    let len = row_len(k);
    let lo = if j + 1 < len {
        above[j + 1]
    } else if k.is_multiple_of(2) {
        // Row 2p under row 2p+1: the last entry is bounded below by -m_{p,2p+1}
        // (classical) or by 1/2 (nonclassical).
        match flavor {
            Flavor::Classical => -above[j],
            Flavor::Nonclassical => Half::HALF,
        }
    } else {
        // Row 2p-1 under row 2p: m_{p-1,2p-1} >= |m_{p,2p}| (classical) or
        // >= m_{p,2p} (nonclassical).
        match flavor {
            Flavor::Classical => above[j + 1].abs(),
            Flavor::Nonclassical => above[j + 1],
        }
    };
    (lo, hi)
}

fn row_fits(above: &[Half], row: &[Half], k: usize, flavor: Flavor) -> bool {
    row.len() == row_len(k)
        && row.iter().enumerate().all(|(j, &x)| {
            let (lo, hi) = entry_bounds(above, k, j, flavor);
            lo <= x && x <= hi && x.same_class(hi)
        })
}

/// A Gel'fand-Tsetlin tableau. `rows[0]` is the highest weight `m_n` and the
/// last row is `m_2`.
///
/// The derived ordering is the canonical basis order: within one
/// representation (same flavor, same top row) it is lexicographic over
/// `m_{n-1}, m_{n-2}, ..., m_2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GtPattern {
    flavor: Flavor,
    rows: Vec<Vec<Half>>,
}

#[derive(Deserialize)]
struct PatternRepr {
    flavor: Flavor,
    rows: Vec<Vec<Half>>,
}

impl<'de> Deserialize<'de> for GtPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PatternRepr::deserialize(d)?;
        GtPattern::new(r.flavor, r.rows).map_err(serde::de::Error::custom)
    }
}

impl GtPattern {
    /// Validates and builds a tableau from its rows, top row first.
    pub fn new(flavor: Flavor, rows: Vec<Vec<Half>>) -> Result<Self> {
        let p = GtPattern { flavor, rows };
        if p.is_valid() {
            Ok(p)
        } else {
            Err(Error::InvalidWeight(format!("not a valid {flavor} tableau: {p}")))
        }
    }

    pub fn from_doubled(flavor: Flavor, rows: &[Vec<i32>]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&d| Half(d)).collect()).collect();
        Self::new(flavor, rows)
    }

    pub fn n(&self) -> usize {
        self.rows.len() + 1
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rows(&self) -> &[Vec<Half>] {
        &self.rows
    }

    pub fn top(&self) -> &[Half] {
        &self.rows[0]
    }

    /// Row `m_k`; empty for `k < 2` so that products over missing rows are empty.
    pub fn row(&self, k: usize) -> &[Half] {
        if k < 2 || k > self.n() {
            &[]
        } else {
            &self.rows[self.n() - k]
        }
    }

    /// Entry `m_{j,k}`, 1-based `j`.
    pub fn m(&self, k: usize, j: usize) -> Half {
        self.row(k)[j - 1]
    }

    pub fn doubled_rows(&self) -> Vec<Vec<i32>> {
        self.rows.iter().map(|r| r.iter().map(|h| h.0).collect()).collect()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n();
        if self.rows.is_empty() || !validate_weight(n, &self.rows[0], self.flavor) {
            return false;
        }
        (2..n).all(|k| row_fits(self.row(k + 1), self.row(k), k, self.flavor))
    }

    /// The same tableau relabelled with another flavor, if still valid.
    pub fn reflavor(&self, flavor: Flavor) -> Option<GtPattern> {
        let p = GtPattern { flavor, rows: self.rows.clone() };
        p.is_valid().then_some(p)
    }

    /// `(xi)^{+-j}_k`: the tableau with `m_{j,k}` replaced by `m_{j,k} + delta`,
    /// or `None` when the result violates the betweenness conditions. `j` is
    /// 1-based; the top row is never shifted.
    pub fn shift(&self, k: usize, j: usize, delta: i32) -> Option<GtPattern> {
        let n = self.n();
        if k < 2 || k >= n || j == 0 || j > row_len(k) {
            return None;
        }
        let mut out = self.clone();
        let idx = n - k;
        out.rows[idx][j - 1] = Half(out.rows[idx][j - 1].0 + 2 * delta);
        let above_ok = row_fits(out.row(k + 1), out.row(k), k, self.flavor);
        let below_ok = k == 2 || row_fits(out.row(k), out.row(k - 1), k - 1, self.flavor);
        (above_ok && below_ok).then_some(out)
    }

    pub fn lcoords(&self) -> LCoords {
        let n = self.n();
        LCoords {
            rows: (0..=n).map(|k| lcoord_row(k, self.row(k))).collect(),
        }
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Half::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", rows.join(" | "))
    }
}

/// l-coordinates of a single row `k`:
/// `l_{j,2p+1} = m_{j,2p+1} + p - j + 1`, `l_{j,2p} = m_{j,2p} + p - j`.
pub fn lcoord_row(k: usize, row: &[Half]) -> Vec<Half> {
    let p = k / 2;
    let odd = k % 2 == 1;
    row.iter()
        .enumerate()
        .map(|(i, &m)| {
            let j = i as i32 + 1;
            let shift = if odd { p as i32 - j + 1 } else { p as i32 - j };
            m + Half::int(shift)
        })
        .collect()
}

/// l-coordinates of a whole tableau, indexed by row number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LCoords {
    rows: Vec<Vec<Half>>,
}

impl LCoords {
    /// Row `k`; empty when the row does not exist.
    pub fn row(&self, k: usize) -> &[Half] {
        self.rows.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `l_{j,k}`, 1-based `j`.
    pub fn l(&self, k: usize, j: usize) -> Half {
        self.rows[k][j - 1]
    }
}

/// All tableaux with top row `w`, in canonical order.
pub fn enumerate(w: &HighestWeight) -> Vec<GtPattern> {
    let n = w.n();
    let mut rows = vec![w.entries().to_vec()];
    let mut out = Vec::new();
    fill_row(n, n - 1, w.flavor(), &mut rows, &mut out);
    debug_assert!(out.windows(2).all(|p| p[0] < p[1]));
    out
}

fn fill_row(n: usize, k: usize, flavor: Flavor, rows: &mut Vec<Vec<Half>>, out: &mut Vec<GtPattern>) {
    if k < 2 {
        out.push(GtPattern { flavor, rows: rows.clone() });
        return;
    }
    let above = rows[n - k - 1].clone();
    let bounds: Vec<(Half, Half)> = (0..row_len(k)).map(|j| entry_bounds(&above, k, j, flavor)).collect();
    let mut current: Vec<Half> = bounds.iter().map(|b| b.0).collect();
    fill_entry(n, k, flavor, &bounds, 0, &mut current, rows, out);
}

#[allow(clippy::too_many_arguments)]
fn fill_entry(
    n: usize,
    k: usize,
    flavor: Flavor,
    bounds: &[(Half, Half)],
    j: usize,
    current: &mut Vec<Half>,
    rows: &mut Vec<Vec<Half>>,
    out: &mut Vec<GtPattern>,
) {
    if j == bounds.len() {
        rows.push(current.clone());
        fill_row(n, k - 1, flavor, rows, out);
        rows.pop();
        return;
    }
    let (lo, hi) = bounds[j];
    let mut v = lo;
    while v <= hi {
        current[j] = v;
        fill_entry(n, k, flavor, bounds, j + 1, current, rows, out);
        v = v + Half::ONE;
    }
}

/// Position of `p` in a canonically ordered basis.
pub fn index_of(p: &GtPattern, basis: &[GtPattern]) -> Result<usize> {
    basis.binary_search(p).map_err(|_| Error::NotFound)
}

/// Signs `(eps_2, ..., eps_n)`, each `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignVector {
    eps: Vec<i8>,
}

impl SignVector {
    /// `eps` lists `eps_2, ..., eps_n`.
    pub fn new(n: usize, eps: Vec<i8>) -> Result<Self> {
        if n < 2 || eps.len() != n - 1 {
            return Err(Error::InvalidSigns(format!(
                "expected {} signs (eps_2..eps_{n}), got {}",
                n.saturating_sub(1),
                eps.len()
            )));
        }
        Self::try_from(eps)
    }

    pub fn all_plus(n: usize) -> Self {
        SignVector { eps: vec![1; n - 1] }
    }

    /// Full vector from the even components `eps_2, eps_4, ...`; odd
    /// components are set to `+1`.
    pub fn from_evens(n: usize, evens: &[i8]) -> Result<Self> {
        if evens.len() != n / 2 {
            return Err(Error::InvalidSigns(format!(
                "expected {} even signs, got {}",
                n / 2,
                evens.len()
            )));
        }
        let eps = (2..=n).map(|k| if k % 2 == 0 { evens[k / 2 - 1] } else { 1 }).collect();
        Self::new(n, eps)
    }

    /// All `2^{n-1}` sign vectors, in binary order with `+1` first.
    pub fn all(n: usize) -> impl Iterator<Item = SignVector> {
        let m = n - 1;
        (0u32..(1 << m)).map(move |bits| SignVector {
            eps: (0..m).map(|i| if bits >> (m - 1 - i) & 1 == 0 { 1 } else { -1 }).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.eps.len() + 1
    }

    /// `eps_k` for `2 <= k <= n`.
    #[inline]
    pub fn get(&self, k: usize) -> i8 {
        self.eps[k - 2]
    }

    pub fn set(&mut self, k: usize, s: i8) {
        assert!(s == 1 || s == -1);
        self.eps[k - 2] = s;
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.eps
    }

    pub fn evens(&self) -> Vec<i8> {
        (2..=self.n()).filter(|k| k % 2 == 0).map(|k| self.get(k)).collect()
    }
}

impl TryFrom<Vec<i8>> for SignVector {
    type Error = Error;

    fn try_from(eps: Vec<i8>) -> Result<Self> {
        if eps.is_empty() {
            return Err(Error::InvalidSigns("empty sign vector".into()));
        }
        if let Some(bad) = eps.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::InvalidSigns(format!("component {bad} is not +1 or -1")));
        }
        Ok(SignVector { eps })
    }
}

impl From<SignVector> for Vec<i8> {
    fn from(s: SignVector) -> Vec<i8> {
        s.eps
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.eps.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
        write!(f, "({s})")
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.eps.cmp(&other.eps)
    }
}
