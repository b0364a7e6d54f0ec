//! One function per subcommand. Each takes the raw JSON input (if any) and
//! returns the JSON to print together with the exit code.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use flagpos_core::bruhat::{envelope, is_interval};
use flagpos_core::ground::Subset;
use flagpos_core::matroid::{is_flag_matroid, is_matroid_bases, FlagMatroid};
use flagpos_core::necklace::{is_positroid, necklace_of, positroid_of, quotient_test_with, QuotientRule};
use flagpos_core::polytope::{certify_flag_positroid, cell_to_flag_matroid, subdivision_from_mu};
use flagpos_core::tropical::{
    first_violation, in_fldr, in_fldr_nonneg, pom_check, positive_tropical_holds, tropical_holds,
    ThreeTermRelation,
};

use crate::io::{
    bases_to_matroid, parse_json, pointer_join, subset_key, to_flag_vector, to_matroid, to_matroid_seq, to_necklace,
    CliError, CliResult, FlagVectorJson, IntervalJson, MatroidJson, MatroidSeqJson, QuotientJson,
};
use crate::repro;
use crate::suites;

/// Exit codes: the property holds / the computation succeeded, the property
/// fails, the input is invalid.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub code: i32,
}

impl Outcome {
    fn verdict(value: Value, holds: bool) -> Self {
        Outcome {
            value,
            code: if holds { EXIT_OK } else { EXIT_FAIL },
        }
    }

    fn ok(value: Value) -> Self {
        Outcome { value, code: EXIT_OK }
    }
}

/// Envelope for `reproduce` and `suite`.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: String,
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u128,
    pub results: T,
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// `{"n", "bases"}` → `{"matroid": bool}`.
pub fn check_matroid(text: &str) -> CliResult<Outcome> {
    let j: MatroidJson = parse_json(text)?;
    flagpos_core::ground::check_n(j.n).map_err(|e| CliError::input("/n", e))?;
    let masks = j
        .bases
        .iter()
        .enumerate()
        .map(|(i, b)| {
            // Validate elements and sizes with the same pointers as the reader.
            bases_to_matroid(j.n, std::slice::from_ref(b), &pointer_join("/bases", i)).map(|m| m.bases()[0])
        })
        .collect::<CliResult<Vec<_>>>()?;
    if masks.is_empty() {
        return Err(CliError::input("/bases", "no bases given"));
    }
    // Mixed cardinalities are a failed axiom, not malformed input.
    let subsets = masks
        .iter()
        .map(|&b| Subset::from_bits(j.n, b))
        .collect::<Result<Vec<_>, _>>()?;
    let holds = is_matroid_bases(j.n, &subsets).unwrap_or(false);
    Ok(Outcome::verdict(json!({ "matroid": holds }), holds))
}

/// `{"n", "bases"}` → `{"positroid": bool, "necklace": [...]}`.
pub fn check_positroid(text: &str) -> CliResult<Outcome> {
    let j: MatroidJson = parse_json(text)?;
    let m = to_matroid(&j, "")?;
    let holds = is_positroid(&m)?;
    let neck = necklace_of(&m)?;
    Ok(Outcome::verdict(
        json!({ "positroid": holds, "necklace": neck.set_lists() }),
        holds,
    ))
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum NecklaceInput {
    Matroid(MatroidJson),
    Necklace(NecklaceJson),
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct NecklaceJson {
    n: usize,
    necklace: Vec<Vec<usize>>,
}

/// `{"n", "bases"}` → `{"n", "necklace"}`, and `{"n", "necklace"}` → the
/// positroid `{"n", "bases"}`.
pub fn necklace(text: &str) -> CliResult<Outcome> {
    let input: NecklaceInput = parse_json(text)?;
    match input {
        NecklaceInput::Matroid(j) => {
            let m = to_matroid(&j, "")?;
            let neck = necklace_of(&m)?;
            Ok(Outcome::ok(json!({ "n": m.n(), "necklace": neck.set_lists() })))
        }
        NecklaceInput::Necklace(j) => {
            flagpos_core::ground::check_n(j.n).map_err(|e| CliError::input("/n", e))?;
            let neck = to_necklace(j.n, &j.necklace, "/necklace")?;
            Ok(Outcome::ok(to_value(&MatroidJson::from_matroid(&positroid_of(&neck)))))
        }
    }
}

/// `{"n", "low", "high", "rule"?}` (necklaces) → `{"quotient", "failed_condition"}`.
pub fn quotient(text: &str) -> CliResult<Outcome> {
    let j: QuotientJson = parse_json(text)?;
    flagpos_core::ground::check_n(j.n).map_err(|e| CliError::input("/n", e))?;
    let rule = match j.rule.as_deref() {
        None | Some("corrected") => QuotientRule::Corrected,
        Some("printed") => QuotientRule::Printed,
        Some(other) => {
            return Err(CliError::input(
                "/rule",
                format!("unknown rule {other:?}; expected \"corrected\" or \"printed\""),
            ))
        }
    };
    let low = to_necklace(j.n, &j.low, "/low")?;
    let high = to_necklace(j.n, &j.high, "/high")?;
    let v = quotient_test_with(&low, &high, rule).map_err(|e| CliError::input("", e))?;
    Ok(Outcome::verdict(
        json!({ "quotient": v.quotient, "failed_condition": v.failed_condition }),
        v.quotient,
    ))
}

/// `{"n", "matroids"}` → `{"pom": bool, "flag_matroid": bool}`.
pub fn pom(text: &str) -> CliResult<Outcome> {
    let j: MatroidSeqJson = parse_json(text)?;
    let seq = to_matroid_seq(&j)?;
    let flag = is_flag_matroid(&seq).map_err(|e| CliError::input("/matroids", e))?;
    let holds = pom_check(&seq).map_err(|e| CliError::input("/matroids", e))?;
    Ok(Outcome::verdict(json!({ "pom": holds, "flag_matroid": flag }), holds))
}

fn relation_json(rel: &ThreeTermRelation) -> Value {
    let terms: Vec<[String; 2]> = rel.terms.iter().map(|&(a, b)| [subset_key(a), subset_key(b)]).collect();
    json!({
        "kind": format!("{:?}", rel.kind),
        "rank": rel.rank,
        "terms": terms,
    })
}

/// A valuated vector or an array of them (consecutive ranks) →
/// `{"in_fldr", "in_fldr_nonneg", "violation"}`.
pub fn fldr(text: &str) -> CliResult<Outcome> {
    let j: FlagVectorJson = parse_json(text)?;
    let mu = to_flag_vector(&j)?;
    let nonneg = in_fldr_nonneg(&mu).map_err(|e| CliError::input("", e))?;
    let plain = in_fldr(&mu)?;
    let support_ok = match mu.support() {
        Some(seq) => is_flag_matroid(&seq)?,
        None => false,
    };
    let violation = first_violation(&mu, positive_tropical_holds).map(|r| relation_json(&r));
    let tropical_violation = first_violation(&mu, tropical_holds).map(|r| relation_json(&r));
    Ok(Outcome::verdict(
        json!({
            "in_fldr": plain,
            "in_fldr_nonneg": nonneg,
            "support_is_flag_matroid": support_ok,
            "violation": violation,
            "tropical_violation": tropical_violation,
        }),
        nonneg,
    ))
}

/// A valuated vector or an array of them → the maximal cells of the induced
/// subdivision, with their flag matroids and positivity.
pub fn subdivide(text: &str) -> CliResult<Outcome> {
    let j: FlagVectorJson = parse_json(text)?;
    let mu = to_flag_vector(&j)?;
    let sub = subdivision_from_mu(&mu).map_err(|e| CliError::input("", e))?;
    let n = mu.n();
    let consecutive = mu.is_consecutive();
    let mut cells = Vec::new();
    for c in sub.subdivision.cells() {
        // Flag polytope vertices are 0/1 vectors sums, hence integral.
        let vertices: Vec<Vec<i64>> = c
            .iter()
            .map(|&i| {
                sub.subdivision.points()[i]
                    .iter()
                    .map(|x| i64::try_from(x.to_integer()).expect("small integral coordinate"))
                    .collect()
            })
            .collect();
        let seq = cell_to_flag_matroid(n, &sub.labels(c))?;
        let positroid = if consecutive { Some(certify_flag_positroid(&seq)?) } else { None };
        let fm = FlagMatroid::new(seq.clone())?;
        let interval = if fm.is_complete() && is_interval(&fm)? {
            let env = envelope(&fm)?;
            Some(IntervalJson::new(env.u(), env.v()))
        } else {
            None
        };
        cells.push(json!({
            "vertices": vertices,
            "flag_matroid": MatroidSeqJson {
                n,
                matroids: seq.iter().map(|m| m.basis_lists()).collect(),
            },
            "flag_positroid": positroid,
            "interval": interval,
        }));
    }
    Ok(Outcome::ok(json!({
        "n": n,
        "ranks": mu.ranks(),
        "fvector": sub.subdivision.fvector(),
        "trivial": sub.subdivision.is_trivial(),
        "cells": cells,
    })))
}

/// A complete flag matroid `{"n", "matroids"}` → its envelope
/// `{"u", "v", "is_interval"}`.
pub fn envelope_cmd(text: &str) -> CliResult<Outcome> {
    let j: MatroidSeqJson = parse_json(text)?;
    let seq = to_matroid_seq(&j)?;
    let fm = FlagMatroid::new(seq).map_err(|e| CliError::input("/matroids", e))?;
    let env = envelope(&fm).map_err(|e| CliError::input("/matroids", e))?;
    let holds = is_interval(&fm)?;
    let iv = IntervalJson::new(env.u(), env.v());
    Ok(Outcome::verdict(
        json!({ "u": iv.u, "v": iv.v, "is_interval": holds }),
        holds,
    ))
}

pub const TARGETS: [&str; 4] = ["figure1", "table1", "table2", "examples"];

/// Recomputes a printed target and compares it with its golden file.
pub fn reproduce(target: &str, jobs: usize) -> CliResult<Outcome> {
    let start = Instant::now();
    let (results, pass, golden) = match target {
        "table1" | "table2" => {
            let g = repro::load_table(target)?;
            let r = repro::reproduce_table(&g, jobs, target == "table1")?;
            let text = if target == "table1" { repro::TABLE1 } else { repro::TABLE2 };
            (to_value(&r), r.pass, text)
        }
        "figure1" => {
            let r = repro::reproduce_figure1()?;
            (to_value(&r), r.pass, repro::FIGURE1)
        }
        "examples" => {
            let r = repro::reproduce_examples()?;
            (to_value(&r), r.pass, repro::EXAMPLES)
        }
        other => {
            return Err(CliError::input(
                "",
                format!("unknown target {other:?}; expected one of {}", TARGETS.join(", ")),
            ))
        }
    };
    let report = RunReport {
        command: format!("reproduce {target}"),
        inputs_digest: digest(golden),
        seed: None,
        elapsed_ms: start.elapsed().as_millis(),
        results,
    };
    Ok(Outcome::verdict(to_value(&report), pass))
}

/// Runs one property suite, or all of them for `"all"`.
pub fn suite(name: &str, seed: u64, scale: f64) -> CliResult<Outcome> {
    let start = Instant::now();
    let names: Vec<&str> = if name == "all" { suites::SUITES.to_vec() } else { vec![name] };
    let reports = names
        .iter()
        .map(|s| suites::run_suite(s, seed, scale))
        .collect::<CliResult<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let report = RunReport {
        command: format!("suite {name}"),
        inputs_digest: digest(&format!("{name}:{seed}:{scale}")),
        seed: Some(seed),
        elapsed_ms: start.elapsed().as_millis(),
        results: reports,
    };
    Ok(Outcome::verdict(to_value(&report), pass))
}

/// Lines describing every failed check of a `reproduce` report.
pub fn diff_lines(report: &Value) -> Vec<String> {
    let mut out = Vec::new();
    let results = &report["results"];
    if let Some(rows) = results["rows"].as_array() {
        for r in rows {
            for d in r["diff"].as_array().into_iter().flatten() {
                out.push(format!("row {}: {}", r["row"], d.as_str().unwrap_or_default()));
            }
        }
        if results["pairwise_distinct"] == Value::Bool(false) {
            out.push("subdivisions are not pairwise distinct".into());
        }
        if results["label_convention"] != results["recorded_label_convention"] {
            out.push(format!(
                "label convention: recorded {}, determined {}",
                results["recorded_label_convention"], results["label_convention"]
            ));
        }
    }
    for c in results["checks"].as_array().into_iter().flatten() {
        if c["pass"] == Value::Bool(false) && c["informational"] != Value::Bool(true) {
            out.push(format!("{}: {}", c["name"].as_str().unwrap_or_default(), c["detail"]));
        }
    }
    out
}
