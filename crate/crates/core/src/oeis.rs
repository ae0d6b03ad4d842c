//! b-file fixtures and prefix checks against them.
//!
//! A b-file has one `index value` pair per line; blank lines and lines
//! starting with `#` are ignored. Fixtures ship inside the crate and can be
//! overridden by a directory of `bNNNNNN.txt` files. Which fixture index a
//! preset value corresponds to is declared in `fixtures/manifest.txt`.

use std::fmt;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{evaluate, evaluate_memoized};
use crate::numeric::{Nat, SInt};
use crate::presets::{self, PresetError, PresetParams};

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no fixture for {0}")]
    NotFound(String),
    #[error("{a_number} has no entry at index {index}")]
    OutOfRange { a_number: String, index: i64 },
    #[error("reading {path}: {msg}")]
    Io { path: PathBuf, msg: String },
    #[error("fetching {url}: {msg}")]
    Transport { url: String, msg: String },
    #[error("manifest line {line}: {msg}")]
    Manifest { line: usize, msg: String },
    #[error("no manifest entry for preset `{0}`")]
    NoMapping(String),
    #[error("{0}")]
    Preset(String),
}

impl From<PresetError> for OeisError {
    fn from(e: PresetError) -> Self {
        OeisError::Preset(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: SInt,
    pub value: SInt,
}

/// A parsed b-file that keeps its leading comment lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub header: Vec<String>,
    pub entries: Vec<BFileEntry>,
}

impl BFile {
    pub fn parse(text: &str) -> Result<Self, OeisError> {
        let mut header = Vec::new();
        let mut entries: Vec<BFileEntry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('#') {
                if entries.is_empty() {
                    header.push(raw.to_string());
                }
                continue;
            }
            let err = |msg: &str| OeisError::Parse {
                line: i + 1,
                msg: format!("{msg}: {line:?}"),
            };
            let mut parts = line.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err("expected `index value`"));
            };
            let index: SInt = a.parse().map_err(|_| err("bad index"))?;
            let value: SInt = b.parse().map_err(|_| err("bad value"))?;
            if let Some(last) = entries.last() {
                if index <= last.index {
                    return Err(err("indices must increase"));
                }
            }
            entries.push(BFileEntry { index, value });
        }
        Ok(BFile { header, entries })
    }

    pub fn value_at(&self, index: i64) -> Option<&SInt> {
        let idx = SInt::from(index);
        self.entries.iter().find(|e| e.index == idx).map(|e| &e.value)
    }
}

impl fmt::Display for BFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.header {
            writeln!(f, "{h}")?;
        }
        for e in &self.entries {
            writeln!(f, "{} {}", e.index, e.value)?;
        }
        Ok(())
    }
}

pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>, OeisError> {
    BFile::parse(text).map(|b| b.entries)
}

/// Serializes entries in b-file format.
pub fn to_bfile(entries: &[BFileEntry]) -> String {
    BFile {
        header: Vec::new(),
        entries: entries.to_vec(),
    }
    .to_string()
}

macro_rules! bundled {
    ($($a:literal => $file:literal),* $(,)?) => {
        &[$(($a, include_str!(concat!("../fixtures/", $file)))),*]
    };
}

/// Fixtures compiled into the crate.
pub const BUNDLED: &[(&str, &str)] = bundled! {
    "A000045" => "b000045.txt",
    "A000079" => "b000079.txt",
    "A000108" => "b000108.txt",
    "A000111" => "b000111.txt",
    "A000142" => "b000142.txt",
    "A000217" => "b000217.txt",
    "A000244" => "b000244.txt",
    "A000245" => "b000245.txt",
    "A000290" => "b000290.txt",
    "A000326" => "b000326.txt",
    "A000344" => "b000344.txt",
    "A000384" => "b000384.txt",
    "A000578" => "b000578.txt",
    "A000583" => "b000583.txt",
    "A001147" => "b001147.txt",
    "A002057" => "b002057.txt",
    "A002293" => "b002293.txt",
    "A002449" => "b002449.txt",
    "A003517" => "b003517.txt",
    "A125860" => "b125860.txt",
    "A137273" => "b137273.txt",
};

pub const MANIFEST: &str = include_str!("../fixtures/manifest.txt");

/// Where fixtures are read from.
#[derive(Clone, Debug, Default)]
pub enum FixtureSource {
    #[default]
    Bundled,
    Directory(PathBuf),
    /// Downloaded on each load; see [`fetch`].
    Online,
}

fn normalize(a_number: &str) -> Result<(String, u32), OeisError> {
    let digits = a_number.trim_start_matches(['A', 'a']);
    let num: u32 = digits
        .parse()
        .map_err(|_| OeisError::NotFound(a_number.to_string()))?;
    Ok((format!("A{num:06}"), num))
}

impl FixtureSource {
    pub fn text(&self, a_number: &str) -> Result<String, OeisError> {
        let (a, num) = normalize(a_number)?;
        match self {
            FixtureSource::Bundled => BUNDLED
                .iter()
                .find(|(id, _)| *id == a)
                .map(|(_, t)| t.to_string())
                .ok_or(OeisError::NotFound(a)),
            FixtureSource::Directory(dir) => {
                let path = dir.join(format!("b{num:06}.txt"));
                if !path.exists() {
                    return Err(OeisError::NotFound(a));
                }
                std::fs::read_to_string(&path).map_err(|e| OeisError::Io {
                    path,
                    msg: e.to_string(),
                })
            }
            FixtureSource::Online => Ok(to_bfile(&fetch(&a)?)),
        }
    }

    pub fn load(&self, a_number: &str) -> Result<BFile, OeisError> {
        BFile::parse(&self.text(a_number)?)
    }
}

pub fn load_fixture(a_number: &str) -> Result<Vec<BFileEntry>, OeisError> {
    Ok(FixtureSource::Bundled.load(a_number)?.entries)
}

pub fn load_fixture_from(dir: &Path, a_number: &str) -> Result<Vec<BFileEntry>, OeisError> {
    Ok(FixtureSource::Directory(dir.to_path_buf()).load(a_number)?.entries)
}

/// Value at `index` in a bundled fixture, as a natural number.
pub fn bundled_value(a_number: &str, index: u64) -> Result<Nat, OeisError> {
    let b = FixtureSource::Bundled.load(a_number)?;
    let out_of_range = || OeisError::OutOfRange {
        a_number: a_number.to_string(),
        index: index as i64,
    };
    let v = b.value_at(index as i64).ok_or_else(out_of_range)?;
    v.to_biguint().ok_or_else(out_of_range)
}

/// Position of row `n`, column `x` when a table is read by antidiagonals
/// `d = n + x`, each antidiagonal in increasing `x`.
pub fn antidiagonal_index(n: u64, x: u64) -> u64 {
    let d = n + x;
    d * (d + 1) / 2 + x
}

pub fn base_url() -> String {
    std::env::var("OEIS_BASE_URL").unwrap_or_else(|_| "https://oeis.org".to_string())
}

pub fn bfile_url(a_number: &str) -> Result<String, OeisError> {
    let (a, num) = normalize(a_number)?;
    Ok(format!("{}/{a}/b{num:06}.txt", base_url().trim_end_matches('/')))
}

/// Downloads a b-file. Needs the `online` feature.
#[cfg(feature = "online")]
pub fn fetch(a_number: &str) -> Result<Vec<BFileEntry>, OeisError> {
    let url = bfile_url(a_number)?;
    let transport = |e: &dyn fmt::Display| OeisError::Transport {
        url: url.clone(),
        msg: e.to_string(),
    };
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(std::time::Duration::from_secs(30)))
        .build()
        .into();
    let text = agent
        .get(&url)
        .call()
        .map_err(|e| transport(&e))?
        .body_mut()
        .read_to_string()
        .map_err(|e| transport(&e))?;
    parse_bfile(&text)
}

#[cfg(not(feature = "online"))]
pub fn fetch(a_number: &str) -> Result<Vec<BFileEntry>, OeisError> {
    Err(OeisError::Transport {
        url: bfile_url(a_number)?,
        msg: "built without the `online` feature".into(),
    })
}

/// How a varied preset parameter maps to a fixture index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IndexMap {
    /// `index = value + shift`
    Shift(i64),
    /// `index = antidiagonal_index(n, x)`
    Antidiagonal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifestEntry {
    pub preset: String,
    pub a_number: String,
    pub vary: String,
    pub from: u64,
    pub map: IndexMap,
    pub fixed: PresetParams,
}

impl ManifestEntry {
    fn index_for(&self, v: u64, params: &PresetParams) -> i64 {
        match self.map {
            IndexMap::Shift(s) => v as i64 + s,
            IndexMap::Antidiagonal => {
                let get = |k: &str| {
                    params
                        .scalars
                        .get(k)
                        .and_then(|v| v.to_u64())
                        .unwrap_or(0)
                };
                antidiagonal_index(get("n"), get("x")) as i64
            }
        }
    }
}

/// Parses manifest lines `preset a-number vary from shift fixed`, where
/// `shift` is an integer or `antidiagonal` and `fixed` is `-` or `K=V,...`.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, OeisError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| OeisError::Manifest { line: i + 1, msg };
        let cols: Vec<&str> = line.split_whitespace().collect();
        let [preset, a_number, vary, from, shift, fixed] = cols[..] else {
            return Err(err(format!("expected 6 columns, got {}", cols.len())));
        };
        let map = if shift == "antidiagonal" {
            IndexMap::Antidiagonal
        } else {
            IndexMap::Shift(shift.parse().map_err(|_| err(format!("bad shift `{shift}`")))?)
        };
        let fixed = if fixed == "-" {
            PresetParams::new()
        } else {
            PresetParams::parse(fixed).map_err(|e| err(e.to_string()))?
        };
        out.push(ManifestEntry {
            preset: preset.to_string(),
            a_number: a_number.to_string(),
            vary: vary.to_string(),
            from: from.parse().map_err(|_| err(format!("bad start `{from}`")))?,
            map,
            fixed,
        });
    }
    Ok(out)
}

pub fn manifest() -> Vec<ManifestEntry> {
    parse_manifest(MANIFEST).expect("bundled manifest parses")
}

/// The manifest line for `preset`, or for `(preset, a_number)` when given.
pub fn mapping(preset: &str, a_number: Option<&str>) -> Result<ManifestEntry, OeisError> {
    let wanted = a_number.map(normalize).transpose()?.map(|(a, _)| a);
    manifest()
        .into_iter()
        .find(|m| m.preset == preset && wanted.as_ref().is_none_or(|a| *a == m.a_number))
        .ok_or_else(|| OeisError::NoMapping(preset.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixRow {
    pub param: u64,
    pub index: i64,
    pub got: String,
    pub want: Option<String>,
}

impl PrefixRow {
    pub fn matches(&self) -> bool {
        self.want.as_deref() == Some(self.got.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixReport {
    pub preset: String,
    pub a_number: String,
    pub vary: String,
    pub rows: Vec<PrefixRow>,
    /// The first (up to) six terms line up.
    pub aligned: bool,
}

impl PrefixReport {
    pub fn matched(&self) -> usize {
        self.rows.iter().filter(|r| r.matches()).count()
    }

    pub fn all_match(&self) -> bool {
        self.matched() == self.rows.len()
    }
}

/// Evaluates `preset` for `count` consecutive values of its varied
/// parameter, starting at `from` (or the manifest's start), and compares
/// with the fixture. Mismatches and missing fixture entries go into the
/// report rather than the error.
pub fn check_preset_prefix(
    preset: &str,
    a_number: Option<&str>,
    from: Option<u64>,
    count: u64,
    source: &FixtureSource,
) -> Result<PrefixReport, OeisError> {
    let m = mapping(preset, a_number)?;
    let bfile = source.load(&m.a_number)?;
    let start = from.unwrap_or(m.from);
    let mut rows = Vec::with_capacity(count as usize);
    for v in start..start + count {
        let mut params = m.fixed.clone();
        params.set(&m.vary, v);
        let program = presets::build(preset, &params)?;
        let value = if program.is_markov() {
            evaluate_memoized(&program)
        } else {
            evaluate(&program)
        }
        .map_err(PresetError::from)?;
        let index = m.index_for(v, &params);
        rows.push(PrefixRow {
            param: v,
            index,
            got: value.to_string(),
            want: bfile.value_at(index).map(|w| w.to_string()),
        });
    }
    let aligned = rows.iter().take(6).all(PrefixRow::matches);
    Ok(PrefixReport {
        preset: preset.to_string(),
        a_number: m.a_number,
        vary: m.vary,
        rows,
        aligned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(entries: &[BFileEntry]) -> Vec<(i64, i64)> {
        entries
            .iter()
            .map(|e| (e.index.to_i64().unwrap(), e.value.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(pairs(&parse_bfile("0 1\n1 1\n2 2\n").unwrap()), [(0, 1), (1, 1), (2, 2)]);
        assert_eq!(pairs(&parse_bfile("# comment\n\n0 1\n").unwrap()), [(0, 1)]);
        match parse_bfile("0 1\nbogus\n") {
            Err(OeisError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_bfile("1 1\n0 1\n").is_err());
        assert!(parse_bfile("0 1 2\n").is_err());
        assert_eq!(pairs(&parse_bfile("-1 -5\n").unwrap()), [(-1, -5)]);
    }

    #[test]
    fn bundled_fixtures_roundtrip() {
        for (a, text) in BUNDLED {
            let b = BFile::parse(text).unwrap_or_else(|e| panic!("{a}: {e}"));
            assert!(!b.entries.is_empty(), "{a}");
            assert_eq!(b.to_string().trim_end(), text.trim_end(), "{a}");
        }
        let e = parse_bfile("0 1\n5 8\n").unwrap();
        assert_eq!(to_bfile(&e), "0 1\n5 8\n");
    }

    #[test]
    fn prefixes_of_known_fixtures() {
        let first = |a: &str, k: usize| -> Vec<i64> {
            load_fixture(a).unwrap()[..k]
                .iter()
                .map(|e| e.value.to_i64().unwrap())
                .collect()
        };
        assert_eq!(first("A000108", 5), [1, 1, 2, 5, 14]);
        assert_eq!(first("A000142", 6), [1, 1, 2, 6, 24, 120]);
        assert_eq!(first("A002449", 6), [1, 1, 2, 6, 26, 166]);
        assert!(matches!(load_fixture("A999999"), Err(OeisError::NotFound(_))));
    }

    #[test]
    fn manifest_covers_known_presets() {
        let m = manifest();
        assert!(m.len() >= 20);
        for entry in &m {
            presets::info(&entry.preset).unwrap();
            assert!(BUNDLED.iter().any(|(a, _)| *a == entry.a_number), "{}", entry.a_number);
        }
        assert!(parse_manifest("catalan A000108 n 0\n").is_err());
    }

    #[test]
    fn antidiagonals() {
        assert_eq!(antidiagonal_index(0, 0), 0);
        assert_eq!(antidiagonal_index(1, 0), 1);
        assert_eq!(antidiagonal_index(0, 1), 2);
        assert_eq!(antidiagonal_index(2, 0), 3);
    }

    #[test]
    fn url_uses_base() {
        let url = bfile_url("A108").unwrap();
        assert!(url.ends_with("/A000108/b000108.txt"), "{url}");
    }
}
