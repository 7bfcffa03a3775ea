//! File formats: category presentations as JSON documents, polygon files,
//! and word files for the bordism checker.
//!
//! A category document has sections `name`, `field`, `labels`, `unit`,
//! `dual`, `fusion`, and `F`.  Scalars are self-describing: rationals are
//! strings like `"-3/4"` (bare integers also accepted), cyclotomic values
//! are `{"zeta": n, "coeffs": [...]}` with rational coefficients of
//! `1, zeta, zeta^2, ...`, and prime-field values are `{"mod": p, "value": m}`.
//!
//! Error kinds map onto the exit-code contract: `Parse` means the document
//! itself is malformed (exit 2), `Validation` means it parsed but the data
//! fails a domain check (exit 1).

use std::fs;
use std::path::Path;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::bordism::circle::PlanePoint;
use crate::bordism::words::{parse_statement, Statement};
use crate::category_data::{FSymbolTable, Hexa, TableError};
use crate::fusion_ring::FusionRing;
use crate::scalars::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse: {0}")]
    Parse(String),
    #[error("validation: {0}")]
    Validation(String),
}

impl IoError {
    /// True for document-shape failures, which exit with the usage code.
    pub fn is_parse(&self) -> bool {
        matches!(self, IoError::Parse(_))
    }
}

fn parse_err(what: impl Into<String>) -> IoError {
    IoError::Parse(what.into())
}

// ------------------------------------------------------------- rationals

fn rat_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_parse(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den == BigInt::from(0) {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
        None => {
            let num: BigInt = text.parse().ok()?;
            Some(BigRational::from(num))
        }
    }
}

fn rat_from_json(v: &Value, what: &str) -> Result<BigRational, IoError> {
    match v {
        Value::String(s) => rat_parse(s).ok_or_else(|| parse_err(format!("{what}: malformed rational {s:?}"))),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| parse_err(format!("{what}: {n} is not an exact integer")))?;
            Ok(BigRational::from(BigInt::from(i)))
        }
        _ => Err(parse_err(format!("{what}: expected a rational string"))),
    }
}

// --------------------------------------------------------------- scalars

/// Self-describing scalar encoding.
pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(r) => Value::String(rat_string(r)),
        Scalar::Cyclotomic { order, coeffs } => {
            let mut coeffs: Vec<&BigRational> = coeffs.iter().collect();
            while coeffs.last().is_some_and(|c| c.numer() == &BigInt::from(0)) {
                coeffs.pop();
            }
            json!({
                "zeta": order,
                "coeffs": coeffs.into_iter().map(|c| Value::String(rat_string(c))).collect::<Vec<_>>(),
            })
        }
        Scalar::Prime { modulus, value } => json!({ "mod": modulus, "value": value }),
    }
}

pub fn scalar_from_json(v: &Value, what: &str) -> Result<Scalar, IoError> {
    match v {
        Value::String(_) | Value::Number(_) => Ok(Scalar::Rational(rat_from_json(v, what)?)),
        Value::Object(m) => {
            if let Some(order) = m.get("zeta") {
                let order = order
                    .as_u64()
                    .filter(|&n| n >= 1 && n <= u32::MAX as u64)
                    .ok_or_else(|| parse_err(format!("{what}: bad cyclotomic order")))?;
                let coeffs = m
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| parse_err(format!("{what}: cyclotomic scalar needs a coeffs array")))?;
                let coeffs = coeffs
                    .iter()
                    .map(|c| rat_from_json(c, what))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Scalar::cyclotomic(order as u32, coeffs))
            } else if let Some(p) = m.get("mod") {
                let p = p.as_u64().ok_or_else(|| parse_err(format!("{what}: bad modulus")))?;
                let value = m
                    .get("value")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| parse_err(format!("{what}: prime scalar needs a value")))?;
                Scalar::prime(p, value).map_err(|e| parse_err(format!("{what}: {e}")))
            } else {
                Err(parse_err(format!("{what}: scalar object needs \"zeta\" or \"mod\"")))
            }
        }
        _ => Err(parse_err(format!("{what}: unsupported scalar encoding"))),
    }
}

// ---------------------------------------------------------------- fields

pub fn field_to_json(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Rational => json!({ "kind": "rational" }),
        FieldSpec::Cyclotomic(n) => json!({ "kind": "cyclotomic", "order": n }),
        FieldSpec::Prime(p) => json!({ "kind": "prime", "modulus": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec, IoError> {
    let m = v.as_object().ok_or_else(|| parse_err("field: expected an object"))?;
    let kind = m
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("field: missing kind"))?;
    match kind {
        "rational" => Ok(FieldSpec::Rational),
        "cyclotomic" => {
            let order = m
                .get("order")
                .and_then(Value::as_u64)
                .filter(|&n| n <= u32::MAX as u64)
                .ok_or_else(|| parse_err("field: cyclotomic needs an order"))?;
            FieldSpec::cyclotomic(order as u32).map_err(|e| parse_err(format!("field: {e}")))
        }
        "prime" => {
            let p = m
                .get("modulus")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("field: prime needs a modulus"))?;
            FieldSpec::prime(p).map_err(|e| parse_err(format!("field: {e}")))
        }
        other => Err(parse_err(format!("field: unknown kind {other:?}"))),
    }
}

/// Command-line field syntax: `rational`, `cyclotomic:<n>`, `prime:<p>`.
pub fn field_from_arg(text: &str) -> Result<FieldSpec, IoError> {
    let (kind, arg) = match text.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (text, None),
    };
    let number = |what: &str| -> Result<u64, IoError> {
        arg.and_then(|a| a.parse().ok())
            .ok_or_else(|| parse_err(format!("field {text:?}: {what}")))
    };
    match kind {
        "rational" if arg.is_none() => Ok(FieldSpec::Rational),
        "cyclotomic" => {
            let n = number("needs an order, like cyclotomic:8")?;
            if n > u32::MAX as u64 {
                return Err(parse_err(format!("field {text:?}: order too large")));
            }
            FieldSpec::cyclotomic(n as u32).map_err(|e| parse_err(format!("field {text:?}: {e}")))
        }
        "prime" => {
            let p = number("needs a modulus, like prime:5")?;
            FieldSpec::prime(p).map_err(|e| parse_err(format!("field {text:?}: {e}")))
        }
        _ => Err(parse_err(format!(
            "field {text:?}: expected rational, cyclotomic:<n>, or prime:<p>"
        ))),
    }
}

// ------------------------------------------------------------ categories

/// Serializes a table and a display name to the document format.
pub fn category_to_json(name: &str, table: &FSymbolTable) -> Value {
    let ring = table.ring();
    let label = |i: usize| ring.name(i).to_string();
    let dual: Map<String, Value> = (0..ring.rank())
        .map(|i| (label(i), Value::String(label(ring.dual(i)))))
        .collect();
    let fusion: Vec<Value> = ring
        .admissible_triples()
        .into_iter()
        .map(|(i, j, k)| json!([label(i), label(j), label(k)]))
        .collect();
    let f_entries: Vec<Value> = table
        .admissible_hexatuples()
        .into_iter()
        .map(|(a, b, c, d, e, f)| {
            json!({
                "a": label(a), "b": label(b), "c": label(c), "d": label(d),
                "e": label(e), "f": label(f),
                "value": scalar_to_json(table.f_entry(a, b, c, d, e, f)),
            })
        })
        .collect();
    json!({
        "name": name,
        "field": field_to_json(table.field()),
        "labels": (0..ring.rank()).map(label).collect::<Vec<_>>(),
        "unit": label(ring.unit()),
        "dual": dual,
        "fusion": fusion,
        "F": f_entries,
    })
}

pub fn category_to_string(name: &str, table: &FSymbolTable) -> String {
    let mut text = serde_json::to_string_pretty(&category_to_json(name, table))
        .expect("category documents serialize");
    text.push('\n');
    text
}

fn doc_get<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value, IoError> {
    m.get(key).ok_or_else(|| parse_err(format!("missing section {key:?}")))
}

/// Builds a validated table from a parsed document.  Pentagon coherence is
/// checked unless `skip_pentagon` is set; shape validation always runs.
pub fn category_from_json(doc: &Value, skip_pentagon: bool) -> Result<(String, FSymbolTable), IoError> {
    let m = doc.as_object().ok_or_else(|| parse_err("expected a JSON object"))?;
    let name = doc_get(m, "name")?
        .as_str()
        .ok_or_else(|| parse_err("name: expected a string"))?
        .to_string();
    let field = field_from_json(doc_get(m, "field")?)?;

    let labels: Vec<String> = doc_get(m, "labels")?
        .as_array()
        .ok_or_else(|| parse_err("labels: expected an array"))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_err("labels: expected strings"))
        })
        .collect::<Result<_, _>>()?;
    let resolve = |name: &str, what: &str| -> Result<usize, IoError> {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| IoError::Validation(format!("{what}: unknown label {name:?}")))
    };

    let unit = doc_get(m, "unit")?
        .as_str()
        .ok_or_else(|| parse_err("unit: expected a string"))?;
    let unit = resolve(unit, "unit")?;

    let dual_map = doc_get(m, "dual")?
        .as_object()
        .ok_or_else(|| parse_err("dual: expected an object"))?;
    let mut dual = Vec::with_capacity(labels.len());
    for l in &labels {
        let image = dual_map
            .get(l)
            .ok_or_else(|| IoError::Validation(format!("dual: no entry for {l:?}")))?
            .as_str()
            .ok_or_else(|| parse_err("dual: expected label strings"))?;
        dual.push(resolve(image, "dual")?);
    }

    let rank = labels.len();
    let mut coeffs = vec![0u8; rank * rank * rank];
    for (n, triple) in doc_get(m, "fusion")?
        .as_array()
        .ok_or_else(|| parse_err("fusion: expected an array"))?
        .iter()
        .enumerate()
    {
        let what = format!("fusion triple {n}");
        let triple = triple
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| parse_err(format!("{what}: expected [a, b, c]")))?;
        let mut idx = [0usize; 3];
        for (slot, v) in idx.iter_mut().zip(triple) {
            let s = v.as_str().ok_or_else(|| parse_err(format!("{what}: expected label strings")))?;
            *slot = resolve(s, &what)?;
        }
        coeffs[(idx[0] * rank + idx[1]) * rank + idx[2]] = 1;
    }

    let mut entries = Vec::new();
    for (n, entry) in doc_get(m, "F")?
        .as_array()
        .ok_or_else(|| parse_err("F: expected an array"))?
        .iter()
        .enumerate()
    {
        let what = format!("F entry {n}");
        let entry = entry
            .as_object()
            .ok_or_else(|| parse_err(format!("{what}: expected an object")))?;
        let mut idx = [0usize; 6];
        for (slot, key) in idx.iter_mut().zip(["a", "b", "c", "d", "e", "f"]) {
            let v = entry
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| parse_err(format!("{what}: missing label {key:?}")))?;
            *slot = resolve(v, &what)?;
        }
        let value = entry
            .get("value")
            .ok_or_else(|| parse_err(format!("{what}: missing value")))?;
        let value = scalar_from_json(value, &what)?;
        entries.push(((idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]), value));
    }

    let ring = FusionRing::new(labels.clone(), unit, dual, &coeffs)
        .map_err(|e| IoError::Validation(e.to_string()))?;
    let hexa_names = |h: &Hexa| {
        format!(
            "({}, {}, {}, {}, {}, {})",
            labels[h.0], labels[h.1], labels[h.2], labels[h.3], labels[h.4], labels[h.5]
        )
    };
    let table = FSymbolTable::new(ring, field, entries).map_err(|e| {
        IoError::Validation(match &e {
            TableError::MissingEntry(h) => format!("missing F entry at admissible index {}", hexa_names(h)),
            TableError::InadmissibleEntry(h) => format!("F entry at {} is not admissible", hexa_names(h)),
            _ => e.to_string(),
        })
    })?;
    if !skip_pentagon {
        table
            .pentagon_check()
            .map_err(|v| IoError::Validation(v.to_string()))?;
    }
    Ok((name, table))
}

pub fn parse_category(text: &str, skip_pentagon: bool) -> Result<(String, FSymbolTable), IoError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("json: {e}")))?;
    category_from_json(&doc, skip_pentagon)
}

pub fn load_category(path: &Path, skip_pentagon: bool) -> Result<(String, FSymbolTable), IoError> {
    let text = fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    parse_category(&text, skip_pentagon)
}

// ---------------------------------------------------------------- shapes

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Polygon files: one `x y` pair of rationals per line, `#` comments.
pub fn parse_polygon(text: &str) -> Result<Vec<PlanePoint>, IoError> {
    let mut points = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let what = format!("line {}", n + 1);
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(format!("{what}: expected two coordinates")));
        }
        let x = rat_parse(fields[0])
            .ok_or_else(|| parse_err(format!("{what}: malformed coordinate {:?}", fields[0])))?;
        let y = rat_parse(fields[1])
            .ok_or_else(|| parse_err(format!("{what}: malformed coordinate {:?}", fields[1])))?;
        points.push((x, y));
    }
    Ok(points)
}

pub fn load_polygon(path: &Path) -> Result<Vec<PlanePoint>, IoError> {
    let text = fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    parse_polygon(&text)
}

// ----------------------------------------------------------------- words

/// Word files: one expression or `lhs => rhs` goal per line, `#` comments.
/// Returns statements with their 1-based line numbers.
pub fn parse_word_file(text: &str) -> Result<Vec<(usize, Statement)>, IoError> {
    let mut statements = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let statement =
            parse_statement(line).map_err(|e| parse_err(format!("line {}: {e}", n + 1)))?;
        statements.push((n + 1, statement));
    }
    Ok(statements)
}

pub fn load_word_file(path: &Path) -> Result<Vec<(usize, Statement)>, IoError> {
    let text = fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    parse_word_file(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{builtin, BUILTIN_NAMES};

    #[test]
    fn every_builtin_round_trips() {
        for name in BUILTIN_NAMES {
            let table = builtin(name, None).unwrap();
            let text = category_to_string(name, &table);
            let (back_name, back) = parse_category(&text, true).unwrap();
            assert_eq!(back_name, name);
            assert_eq!(back, table, "round trip changed {name}");
        }
    }

    #[test]
    fn load_validates_pentagon_by_default() {
        let table = builtin("fibonacci", None).unwrap();
        let text = category_to_string("fibonacci", &table);
        let (_, back) = parse_category(&text, false).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn missing_entry_is_a_validation_failure_naming_the_index() {
        let table = builtin("fibonacci", None).unwrap();
        let mut doc = category_to_json("fibonacci", &table);
        let entries = doc["F"].as_array_mut().unwrap();
        let removed = entries
            .iter()
            .position(|e| {
                ["a", "b", "c", "d", "e", "f"].iter().all(|k| e[*k] == "tau")
            })
            .expect("fibonacci has an all-tau entry");
        entries.remove(removed);
        // removing one matrix entry leaves the block incomplete
        entries.retain(|e| !["a", "b", "c", "d"].iter().all(|k| e[*k] == "tau"));
        let err = category_from_json(&doc, true).unwrap_err();
        match &err {
            IoError::Validation(msg) => assert!(msg.contains("tau"), "unhelpful message: {msg}"),
            other => panic!("expected validation, got {other:?}"),
        }
        assert!(!err.is_parse());
    }

    #[test]
    fn malformed_scalar_is_a_parse_failure() {
        let table = builtin("vec_z2", None).unwrap();
        let mut doc = category_to_json("vec_z2", &table);
        doc["F"][0]["value"] = Value::String("one".into());
        let err = category_from_json(&doc, true).unwrap_err();
        assert!(err.is_parse(), "expected parse error, got {err:?}");
    }

    #[test]
    fn tampered_entry_fails_pentagon_on_load() {
        let table = builtin("fibonacci", None).unwrap();
        let mut doc = category_to_json("fibonacci", &table);
        let entries = doc["F"].as_array_mut().unwrap();
        let target = entries
            .iter()
            .position(|e| ["a", "b", "c", "d", "e", "f"].iter().all(|k| e[*k] == "tau"))
            .unwrap();
        entries[target]["value"] = scalar_to_json(&Scalar::from_int(FieldSpec::Cyclotomic(5), 7));
        let err = category_from_json(&doc, false).unwrap_err();
        match err {
            IoError::Validation(msg) => assert!(msg.contains("pentagon"), "message: {msg}"),
            other => panic!("expected validation, got {other:?}"),
        }
    }

    #[test]
    fn scalar_encodings_round_trip() {
        let samples = [
            Scalar::rational(-3, 4),
            Scalar::rational(7, 1),
            &Scalar::zeta_pow(8, 3) + &Scalar::from_int(FieldSpec::Cyclotomic(8), 2),
            Scalar::zero(FieldSpec::Cyclotomic(5)),
            Scalar::prime(7, 5).unwrap(),
        ];
        for s in samples {
            let back = scalar_from_json(&scalar_to_json(&s), "test").unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn field_arguments_parse() {
        assert_eq!(field_from_arg("rational").unwrap(), FieldSpec::Rational);
        assert_eq!(field_from_arg("cyclotomic:8").unwrap(), FieldSpec::Cyclotomic(8));
        assert_eq!(field_from_arg("prime:5").unwrap(), FieldSpec::Prime(5));
        assert!(field_from_arg("prime:6").is_err());
        assert!(field_from_arg("galois:3").is_err());
        assert!(field_from_arg("rational:1").is_err());
    }

    #[test]
    fn polygons_parse_with_comments() {
        let text = "# a square\n0 0\n1 0   # corner\n1 1\n0 1\n\n";
        let points = parse_polygon(text).unwrap();
        assert_eq!(points.len(), 4);
        assert_eq!(points[1].0, rat_parse("1").unwrap());
        assert!(parse_polygon("0 0\n1\n").is_err());
        assert!(parse_polygon("0 0\n1 x\n").is_err());
        let halves = parse_polygon("1/2 -3/2\n").unwrap();
        assert_eq!(halves[0].1, rat_parse("-3/2").unwrap());
    }

    #[test]
    fn word_files_parse_with_line_numbers() {
        let text = "# the belt trick\ncomp(side(id(evL), v2R), side(v1, id(evR)))\n\nid(evL) => id(evL)\n";
        let statements = parse_word_file(text).unwrap();
        assert_eq!(statements.len(), 2);
        assert_eq!(statements[0].0, 2);
        assert!(matches!(statements[1].1, Statement::Goal(_, _)));
        let err = parse_word_file("comp(p\n").unwrap_err();
        assert!(err.is_parse());
    }
}
