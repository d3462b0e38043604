//! JSON wire formats.
//!
//! An entry is an integer `k`, a string `"k/2"` with `k` odd, or an object
//! `{"label": "zeta", "sign": "+", "offset": 2}` for `zeta + 2`. Tables are
//! `{"rows": [[entry, ...], ...]}` listed top to bottom, pyramids are
//! `{"rows": [lengths]}` for the top half, outermost first.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::bounds::DominanceVerdict;
use crate::classify::{Alphabet, BulletChoice, Catalog, ClassifyError, Decision, MembershipReport, Witness};
use crate::entry::{Coset, Entry, Sign};
use crate::frame::Pyramid;
use crate::group::{Letter, Orbit, OrbitWord};
use crate::rs::Tableau;
use crate::table::{RowClass, STable, SkewDiagnostic, TableError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

fn shape(msg: impl Into<String>) -> JsonError {
    JsonError::Shape(msg.into())
}

pub fn entry_to_json(e: Entry) -> Value {
    match e.coset {
        Coset::Int => json!(e.offset),
        Coset::Half => json!(format!("{}/2", 2 * e.offset + 1)),
        Coset::Generic(label, sign) => json!({ "label": label.as_str(), "sign": sign.symbol(), "offset": e.offset }),
    }
}

pub fn entry_from_json(v: &Value) -> Result<Entry, JsonError> {
    match v {
        Value::Number(n) => n.as_i64().map(Entry::int).ok_or_else(|| shape(format!("entry {n} is not an integer"))),
        Value::String(s) => {
            let num = s.strip_suffix("/2").and_then(|n| n.trim().parse::<i64>().ok()).ok_or_else(|| shape(format!("entry {s:?} is not of the form \"k/2\"")))?;
            if num % 2 == 0 {
                return Err(shape(format!("entry {s:?} needs an odd numerator")));
            }
            Ok(Entry::half((num - 1).div_euclid(2)))
        }
        Value::Object(m) => {
            let label = m.get("label").and_then(Value::as_str).filter(|l| !l.is_empty()).ok_or_else(|| shape("generic entry needs a non-empty \"label\""))?;
            let sign = match m.get("sign").and_then(Value::as_str) {
                Some("+") | None => Sign::Plus,
                Some("-") => Sign::Minus,
                Some(other) => return Err(shape(format!("sign must be \"+\" or \"-\", got {other:?}"))),
            };
            let offset = match m.get("offset") {
                None => 0,
                Some(o) => o.as_i64().ok_or_else(|| shape("\"offset\" must be an integer"))?,
            };
            Ok(Entry::generic(label, sign, offset))
        }
        other => Err(shape(format!("cannot read an entry from {other}"))),
    }
}

fn entries_to_json(row: &[Entry]) -> Value {
    Value::Array(row.iter().map(|&e| entry_to_json(e)).collect())
}

fn rows_to_json(rows: &[Vec<Entry>]) -> Value {
    Value::Array(rows.iter().map(|r| entries_to_json(r)).collect())
}

pub fn rows_from_json(v: &Value) -> Result<Vec<Vec<Entry>>, JsonError> {
    let rows = v.get("rows").and_then(Value::as_array).ok_or_else(|| shape("expected an object with a \"rows\" array"))?;
    rows.iter()
        .map(|row| row.as_array().ok_or_else(|| shape("each row must be an array")).and_then(|r| r.iter().map(entry_from_json).collect()))
        .collect()
}

pub fn table_to_json(t: &STable) -> Value {
    json!({ "rows": rows_to_json(t.rows()) })
}

pub fn class_to_json(a: &RowClass) -> Value {
    table_to_json(a.table())
}

pub fn skew_to_json(d: &SkewDiagnostic) -> Value {
    json!({
        "row": d.row,
        "column": d.column + 1,
        "found": d.found.map(entry_to_json),
        "expected": d.expected.map(entry_to_json),
        "message": d.to_string(),
    })
}

pub fn table_from_json(v: &Value) -> Result<STable, JsonError> {
    Ok(STable::new(rows_from_json(v)?)?)
}

pub fn pyramid_to_json(p: &Pyramid) -> Value {
    json!({ "rows": p.top_lengths() })
}

pub fn pyramid_from_json(v: &Value) -> Result<Pyramid, JsonError> {
    Ok(serde_json::from_value(v.clone())?)
}

pub fn alphabet_from_json(v: &Value) -> Result<Alphabet, JsonError> {
    let letters = v.as_array().or_else(|| v.get("letters").and_then(Value::as_array)).ok_or_else(|| shape("alphabet must be an array of entries"))?;
    Ok(Alphabet::new(letters.iter().map(entry_from_json).collect::<Result<_, _>>()?)?)
}

pub fn alphabet_to_json(a: &Alphabet) -> Value {
    entries_to_json(a.letters())
}

pub fn choice_from_json(v: &Value) -> Result<BulletChoice, JsonError> {
    Ok(serde_json::from_value(v.clone())?)
}

pub fn tableau_to_json(t: &Tableau) -> Value {
    json!({ "orientation": "bottom-first", "rows": rows_to_json(t.rows()), "shape": t.shape().parts() })
}

pub fn word_to_json(w: &OrbitWord) -> Value {
    json!(w.to_strings())
}

pub fn word_from_json(v: &Value) -> Result<OrbitWord, JsonError> {
    let letters = v.as_array().ok_or_else(|| shape("a word is an array of letters"))?;
    let letters = letters
        .iter()
        .map(|l| l.as_str().ok_or_else(|| shape("letters are strings")).and_then(|s| s.parse::<Letter>().map_err(shape)))
        .collect::<Result<_, _>>()?;
    Ok(OrbitWord::new(letters))
}

pub fn orbit_to_json(o: &Orbit) -> Value {
    json!({
        "seed": class_to_json(&o.seed),
        "generators": o.d,
        "orbit": o.members.iter().map(|(m, _)| class_to_json(m)).collect::<Vec<_>>(),
        "words": o.members.iter().map(|(_, w)| word_to_json(w)).collect::<Vec<_>>(),
        "undefined_branches": o.undefined.iter().map(|(w, _)| word_to_json(w)).collect::<Vec<_>>(),
        "undefined_reasons": o.undefined.iter().map(|(_, why)| why.to_string()).collect::<Vec<_>>(),
    })
}

pub fn report_to_json(r: &MembershipReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

pub fn decision_to_json(d: &Decision) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), json!(d.verdict.to_string()));
    if let Some(w) = &d.witness {
        let (direction, member, word) = match w {
            Witness::Forward { member, word } => ("forward", member, word),
            Witness::Reverse { member, word } => ("reverse", member, word),
        };
        m.insert("witness".into(), json!({ "direction": direction, "member": class_to_json(member), "word": word_to_json(word) }));
    }
    m.insert("forward_orbit_size".into(), json!(d.forward_orbit_size));
    m.insert("forward_complete".into(), json!(d.forward_complete));
    m.insert("reverse_candidates".into(), json!(d.reverse_candidates));
    m.insert("undefined_branches".into(), json!(d.blocked.iter().map(|(w, _)| word_to_json(w)).collect::<Vec<_>>()));
    Value::Object(m)
}

pub fn catalog_to_json(c: &Catalog) -> Value {
    let accepted: Vec<Value> = c
        .entries
        .iter()
        .map(|e| {
            json!({
                "part": serde_json::to_value(e.part).expect("part serializes"),
                "table": class_to_json(&e.class),
                "orbit_witness": word_to_json(&e.witness),
                "lambda": entries_to_json(&e.lambda),
            })
        })
        .collect();
    json!({
        "pyramid": pyramid_to_json(&c.pyramid),
        "type": c.ty.to_string(),
        "choice": serde_json::to_value(&c.choice).expect("choice serializes"),
        "subgroup": "parity kernel: C is generated by products of an even number of generators",
        "accepted": accepted,
        "undefined": c.undefined.iter().map(|(a, why)| json!({ "table": class_to_json(a), "reason": why.to_string() })).collect::<Vec<_>>(),
    })
}

pub fn verdict_to_json(v: &DominanceVerdict) -> Value {
    serde_json::to_value(v).expect("verdict serializes")
}

/// Pretty JSON with a trailing newline; stable for equal inputs.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
