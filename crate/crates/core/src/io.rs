//! File formats for generator matrices.
//!
//! JSON is canonical and lossless: floats are written in shortest round-trip
//! form, so `load(save(rep))` reproduces every matrix bit for bit.
//!
//! ```json
//! { "n": 3, "kind": "classical", "q": 2.0, "weight": ["1"],
//!   "basis": [[[2], [-2]], [[2], [0]], [[2], [2]]],
//!   "generators": { "I_2_1": [[[0.0, -1.0], ...], ...], "I_3_2": ... } }
//! ```
//!
//! `basis` lists each tableau's rows as doubled integers, top row first.
//! `signs` is present for the kinds that carry one. CSV export writes one file
//! per generator with entries formatted as `re+imi`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::{Flavor, GtPattern, Half, HighestWeight, SignVector};
use crate::qnum::QParam;
use crate::repmatrix::{CMatrix, RepKind, RepMatrices, RepSpec};

/// On-disk form of [`RepMatrices`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<RepKind>,
    pub q: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
    #[serde(default)]
    pub basis: Vec<Vec<Vec<i32>>>,
    pub generators: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

/// `"I_3_2"` for `k = 3`.
pub fn generator_name(k: usize) -> String {
    format!("I_{k}_{}", k - 1)
}

impl MatrixFile {
    pub fn from_rep(rep: &RepMatrices) -> Self {
        let spec = rep.spec();
        let generators = (2..=rep.n())
            .map(|k| {
                let m = rep.generator(k);
                let rows = (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
                (generator_name(k), rows)
            })
            .collect();
        MatrixFile {
            n: rep.n(),
            kind: spec.map(RepSpec::kind),
            q: rep.q().value(),
            weight: spec.map(|s| s.weight().entries().iter().map(Half::to_string).collect()),
            signs: spec.and_then(RepSpec::signs).map(|s| s.as_slice().to_vec()),
            basis: rep.basis().iter().map(GtPattern::doubled_rows).collect(),
            generators,
        }
    }

    pub fn into_rep(self) -> Result<RepMatrices> {
        let q = QParam::new(self.q)?;
        let n = self.n;
        let spec = match (self.kind, &self.weight) {
            (Some(kind), Some(weight)) => {
                let entries = weight.iter().map(|s| s.parse()).collect::<Result<Vec<Half>>>()?;
                let flavor = match kind {
                    RepKind::Classical => Flavor::Classical,
                    _ => Flavor::Nonclassical,
                };
                let w = HighestWeight::new(n, entries, flavor)?;
                let signs = self.signs.clone().map(|s| SignVector::new(n, s)).transpose()?;
                Some(RepSpec::new(w, signs, q, kind)?)
            }
            _ => None,
        };
        let mut generators = Vec::with_capacity(n.saturating_sub(1));
        for k in 2..=n {
            let name = generator_name(k);
            let rows = self
                .generators
                .get(&name)
                .ok_or_else(|| Error::Parse(format!("missing generator {name}")))?;
            let d = rows.len();
            if rows.iter().any(|r| r.len() != d) {
                return Err(Error::DimensionMismatch(format!("{name} is not square")));
            }
            generators.push(CMatrix::from_fn(d, d, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])));
        }
        let basis = match &spec {
            Some(s) if !self.basis.is_empty() => self
                .basis
                .iter()
                .map(|rows| GtPattern::from_doubled(s.basis_flavor(), rows))
                .collect::<Result<Vec<_>>>()?,
            _ => Vec::new(),
        };
        RepMatrices::from_parts(n, q, generators, basis, spec)
    }
}

pub fn to_json(rep: &RepMatrices) -> Result<String> {
    Ok(serde_json::to_string(&MatrixFile::from_rep(rep))?)
}

pub fn from_json(text: &str) -> Result<RepMatrices> {
    serde_json::from_str::<MatrixFile>(text)?.into_rep()
}

pub fn save_json(rep: &RepMatrices, path: &Path) -> Result<()> {
    write_atomic(path, to_json(rep)?.as_bytes())
}

pub fn load_json(path: &Path) -> Result<RepMatrices> {
    from_json(&fs::read_to_string(path)?)
}

fn csv_entry(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// One row-major CSV per generator, `<dir>/I_k_(k-1).csv`. Returns the paths.
pub fn save_csv(rep: &RepMatrices, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for k in 2..=rep.n() {
        let m = rep.generator(k);
        let mut text = String::new();
        for r in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|c| csv_entry(m[(r, c)])).collect();
            text.push_str(&row.join(","));
            text.push('\n');
        }
        let path = dir.join(format!("{}.csv", generator_name(k)));
        write_atomic(&path, text.as_bytes())?;
        paths.push(path);
    }
    Ok(paths)
}

/// Writes to a temporary file in the target directory, then renames it into
/// place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
