//! JSON schemas for command input and output, with JSON-pointer error paths.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

use flagpos_core::ground::{bit, full_mask, mask_elements, Permutation};
use flagpos_core::matroid::Matroid;
use flagpos_core::necklace::GrassmannNecklace;
use flagpos_core::tropical::{FlagTropVector, TropPluckerVector, TropVal};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input at {pointer}: {message}")]
    Input { pointer: String, message: String },
    #[error("{0}")]
    Core(#[from] flagpos_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn input(pointer: impl Into<String>, message: impl ToString) -> Self {
        CliError::Input {
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

pub fn pointer_join(base: &str, token: impl ToString) -> String {
    format!("{base}/{}", escape(&token.to_string()))
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out = pointer_join(&out, index),
            Segment::Map { key } => out = pointer_join(&out, key),
            Segment::Enum { variant } => out = pointer_join(&out, variant),
            Segment::Unknown => {}
        }
    }
    out
}

/// Deserializes `text`, reporting failures with the JSON pointer of the
/// offending value (`""` is the document root).
pub fn parse_json<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        CliError::input(pointer, e.into_inner())
    })
}

/// `{ "n": 4, "bases": [[1,2],[1,3]] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidJson {
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidJson {
            n: m.n(),
            bases: m.basis_lists(),
        }
    }
}

fn subset_mask(n: usize, elems: &[usize], at: &str) -> CliResult<u64> {
    let mut mask = 0;
    for (k, &e) in elems.iter().enumerate() {
        if e == 0 || e > n {
            return Err(CliError::input(pointer_join(at, k), format!("element {e} outside [1, {n}]")));
        }
        if mask & bit(e) != 0 {
            return Err(CliError::input(pointer_join(at, k), format!("repeated element {e}")));
        }
        mask |= bit(e);
    }
    Ok(mask)
}

fn check_n(n: usize, at: &str) -> CliResult<()> {
    flagpos_core::ground::check_n(n).map_err(|e| CliError::input(pointer_join(at, "n"), e))
}

pub fn bases_to_matroid(n: usize, bases: &[Vec<usize>], at: &str) -> CliResult<Matroid> {
    let masks = bases
        .iter()
        .enumerate()
        .map(|(i, b)| subset_mask(n, b, &pointer_join(at, i)))
        .collect::<CliResult<Vec<_>>>()?;
    if masks.is_empty() {
        return Err(CliError::input(at, "no bases given"));
    }
    Matroid::from_masks(n, full_mask(n), masks).map_err(|e| CliError::input(at, e))
}

pub fn to_matroid(j: &MatroidJson, at: &str) -> CliResult<Matroid> {
    check_n(j.n, at)?;
    bases_to_matroid(j.n, &j.bases, &pointer_join(at, "bases"))
}

/// `{ "n": 4, "matroids": [[[1],[2]], [[1,2],[1,3]]] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidSeqJson {
    pub n: usize,
    pub matroids: Vec<Vec<Vec<usize>>>,
}

pub fn to_matroid_seq(j: &MatroidSeqJson) -> CliResult<Vec<Matroid>> {
    check_n(j.n, "")?;
    if j.matroids.is_empty() {
        return Err(CliError::input("/matroids", "empty sequence"));
    }
    j.matroids
        .iter()
        .enumerate()
        .map(|(i, b)| bases_to_matroid(j.n, b, &format!("/matroids/{i}")))
        .collect()
}

/// `{ "n": 6, "low": [[1,2,3], ...], "high": [[1,2,3,5], ...], "rule": "corrected" }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientJson {
    pub n: usize,
    pub low: Vec<Vec<usize>>,
    pub high: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
}

pub fn to_necklace(n: usize, sets: &[Vec<usize>], at: &str) -> CliResult<GrassmannNecklace> {
    let masks = sets
        .iter()
        .enumerate()
        .map(|(i, s)| subset_mask(n, s, &pointer_join(at, i)))
        .collect::<CliResult<Vec<_>>>()?;
    let d = sets.first().map_or(0, |s| s.len());
    GrassmannNecklace::from_masks(n, d, masks).map_err(|e| CliError::input(at, e))
}

pub fn necklace_lists(neck: &GrassmannNecklace) -> Vec<Vec<usize>> {
    neck.set_lists()
}

/// `{ "n": 4, "r": 2, "coords": { "1,3": "1/2", "3,4": "inf" } }`; omitted
/// coordinates are `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuatedJson {
    pub n: usize,
    pub r: usize,
    pub coords: BTreeMap<String, String>,
}

/// A single valuated vector or an array of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FlagVectorJson {
    Many(Vec<ValuatedJson>),
    One(ValuatedJson),
}

pub fn subset_key(mask: u64) -> String {
    mask_elements(mask)
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_key(n: usize, key: &str, at: &str) -> CliResult<u64> {
    if key.trim().is_empty() {
        return Ok(0);
    }
    let elems = key
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::input(at, format!("malformed subset key {key:?}")))?;
    if elems.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::input(at, format!("subset key {key:?} is not strictly increasing")));
    }
    subset_mask(n, &elems, at).map_err(|_| CliError::input(at, format!("subset key {key:?} leaves [1, {n}]")))
}

pub fn to_valuated(j: &ValuatedJson, at: &str) -> CliResult<TropPluckerVector> {
    check_n(j.n, at)?;
    if j.r > j.n {
        return Err(CliError::input(pointer_join(at, "r"), format!("rank {} exceeds n = {}", j.r, j.n)));
    }
    let mut coords = BTreeMap::new();
    for (key, value) in &j.coords {
        let here = pointer_join(&pointer_join(at, "coords"), key);
        let mask = parse_key(j.n, key, &here)?;
        if mask.count_ones() as usize != j.r {
            return Err(CliError::input(&here, format!("subset {key:?} does not have size {}", j.r)));
        }
        let v: TropVal = value.parse().map_err(|e| CliError::input(&here, e))?;
        coords.insert(mask, v);
    }
    TropPluckerVector::new(j.n, j.r, coords).map_err(|e| CliError::input(pointer_join(at, "coords"), e))
}

pub fn from_valuated(v: &TropPluckerVector) -> ValuatedJson {
    ValuatedJson {
        n: v.n(),
        r: v.r(),
        coords: v
            .finite_coords()
            .iter()
            .map(|(&k, x)| (subset_key(k), TropVal::Fin(x.clone()).to_string()))
            .collect(),
    }
}

pub fn to_flag_vector(j: &FlagVectorJson) -> CliResult<FlagTropVector> {
    let consts = match j {
        FlagVectorJson::One(v) => vec![to_valuated(v, "")?],
        FlagVectorJson::Many(vs) => vs
            .iter()
            .enumerate()
            .map(|(i, v)| to_valuated(v, &format!("/{i}")))
            .collect::<CliResult<Vec<_>>>()?,
    };
    FlagTropVector::new(consts).map_err(|e| CliError::input("", e))
}

pub fn from_flag_vector(f: &FlagTropVector) -> FlagVectorJson {
    FlagVectorJson::Many(f.constituents().iter().map(from_valuated).collect())
}

/// `{ "u": [1,2,4,3], "v": [4,2,1,3] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl IntervalJson {
    pub fn new(u: &Permutation, v: &Permutation) -> Self {
        IntervalJson {
            u: u.images().to_vec(),
            v: v.images().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointer_for_bad_value() {
        let text = r#"{"n": 4, "r": 2, "coords": {"1,2": "x"}}"#;
        let j: ValuatedJson = parse_json(text).unwrap();
        match to_valuated(&j, "") {
            Err(CliError::Input { pointer, .. }) => assert_eq!(pointer, "/coords/1,2"),
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"n": 4, "bases": [[1, 2], [1, "a"]]}"#;
        match parse_json::<MatroidJson>(bad) {
            Err(CliError::Input { pointer, .. }) => assert_eq!(pointer, "/bases/1/1"),
            other => panic!("unexpected {other:?}"),
        }
        let j: MatroidJson = parse_json(r#"{"n": 3, "bases": [[1, 4]]}"#).unwrap();
        match to_matroid(&j, "") {
            Err(CliError::Input { pointer, .. }) => assert_eq!(pointer, "/bases/0/1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn valuated_roundtrip() {
        let text = r#"{"n": 4, "r": 2, "coords": {"1,2": "1", "1,3": "0", "3,4": "1/2"}}"#;
        let j: ValuatedJson = parse_json(text).unwrap();
        let v = to_valuated(&j, "").unwrap();
        assert_eq!(from_valuated(&v), j);
    }
}
