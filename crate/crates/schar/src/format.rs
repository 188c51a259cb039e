//! JSON documents: character tables and fusion maps.
//!
//! A table value is an integer, a string `"a/b"`, or
//! `{"n": conductor, "terms": [[exponent, "a/b"], ...]}` for
//! `sum q_e E(n)^e`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use schar_core::{CharacterTable, ConjugacyClass, Cyclotomic, Rational};

/// A document that could not be turned into a table, with the offending field.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field { field: field.into(), message: message.into() }
}

fn parse_json(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, ParseError> {
    obj.get(key).ok_or_else(|| field_err(join(path, key), "missing"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn as_u64(v: &Value, field: &str) -> Result<u64, ParseError> {
    v.as_u64().filter(|&n| n > 0).ok_or_else(|| field_err(field, "expected a positive integer"))
}

fn as_str<'a>(v: &'a Value, field: &str) -> Result<&'a str, ParseError> {
    v.as_str().ok_or_else(|| field_err(field, "expected a string"))
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

fn rational_value(v: &Value, field: &str) -> Result<Rational, ParseError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| field_err(field, "expected an integer")),
        Value::String(s) => parse_rational(s).ok_or_else(|| field_err(field, format!("cannot parse rational {s:?}"))),
        _ => Err(field_err(field, "expected an integer or a string \"a/b\"")),
    }
}

pub fn parse_cyclotomic(v: &Value, field: &str) -> Result<Cyclotomic, ParseError> {
    match v {
        Value::Object(obj) => {
            let n = as_u64(get(obj, "n", field)?, &join(field, "n"))?;
            let terms_field = join(field, "terms");
            let terms = get(obj, "terms", field)?.as_array().ok_or_else(|| field_err(&terms_field, "expected an array"))?;
            let mut raw = Vec::with_capacity(terms.len());
            for (k, t) in terms.iter().enumerate() {
                let tf = format!("{terms_field}[{k}]");
                let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| field_err(&tf, "expected [exponent, coefficient]"))?;
                let e = pair[0].as_i64().ok_or_else(|| field_err(format!("{tf}[0]"), "expected an integer exponent"))?;
                raw.push((e, rational_value(&pair[1], &format!("{tf}[1]"))?));
            }
            Cyclotomic::canonicalize(raw, n).map_err(|e| field_err(join(field, "n"), e.to_string()))
        }
        other => rational_value(other, field).map(Cyclotomic::from_rational),
    }
}

/// Parses a table document. Only the shape is checked here; see
/// [`CharacterTable::validate`] for the arithmetic invariants.
pub fn parse_table(text: &str) -> Result<CharacterTable, ParseError> {
    let doc = parse_json(text)?;
    let obj = doc.as_object().ok_or_else(|| field_err("<root>", "expected an object"))?;
    let name = as_str(get(obj, "name", "")?, "name")?.to_string();
    let order = as_u64(get(obj, "order", "")?, "order")?;
    let classes_v = get(obj, "classes", "")?.as_array().ok_or_else(|| field_err("classes", "expected an array"))?;
    if classes_v.is_empty() {
        return Err(field_err("classes", "no classes"));
    }
    let mut classes = Vec::with_capacity(classes_v.len());
    for (c, v) in classes_v.iter().enumerate() {
        let path = format!("classes[{c}]");
        let o = v.as_object().ok_or_else(|| field_err(&path, "expected an object"))?;
        classes.push(ConjugacyClass {
            name: as_str(get(o, "name", &path)?, &join(&path, "name"))?.to_string(),
            size: as_u64(get(o, "size", &path)?, &join(&path, "size"))?,
            element_order: as_u64(get(o, "order", &path)?, &join(&path, "order"))?,
        });
    }
    if classes[0].element_order != 1 || classes[0].size != 1 {
        return Err(field_err("classes[0]", "the identity class must come first"));
    }
    let n = classes.len();
    let rows_v = get(obj, "irreducibles", "")?.as_array().ok_or_else(|| field_err("irreducibles", "expected an array"))?;
    if rows_v.len() != n {
        return Err(field_err("irreducibles", format!("{} rows for {} classes", rows_v.len(), n)));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, r) in rows_v.iter().enumerate() {
        let path = format!("irreducibles[{i}]");
        let r = r.as_array().ok_or_else(|| field_err(&path, "expected an array"))?;
        if r.len() != n {
            return Err(field_err(&path, format!("{} entries, expected {}", r.len(), n)));
        }
        let row = r.iter().enumerate().map(|(c, v)| parse_cyclotomic(v, &format!("{path}[{c}]"))).collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows[0].iter().any(|v| *v != Cyclotomic::one()) {
        return Err(field_err("irreducibles[0]", "the trivial character must come first"));
    }
    CharacterTable::new(name, order, classes, rows).map_err(|e| field_err("irreducibles", e.to_string()))
}

/// A fusion document: `map` is 1-based in the file and 0-based here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionDocument {
    pub from: String,
    pub to: String,
    pub map: Vec<usize>,
}

pub fn parse_fusion(text: &str) -> Result<FusionDocument, ParseError> {
    let doc = parse_json(text)?;
    let obj = doc.as_object().ok_or_else(|| field_err("<root>", "expected an object"))?;
    let from = as_str(get(obj, "from", "")?, "from")?.to_string();
    let to = as_str(get(obj, "to", "")?, "to")?.to_string();
    let map_v = get(obj, "map", "")?.as_array().ok_or_else(|| field_err("map", "expected an array"))?;
    let map = map_v
        .iter()
        .enumerate()
        .map(|(k, v)| as_u64(v, &format!("map[{k}]")).map(|i| i as usize - 1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FusionDocument { from, to, map })
}

pub fn rational_to_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Some(i) = q.numer().to_i64() {
            return json!(i);
        }
        return json!(q.numer().to_string());
    }
    json!(format!("{}/{}", q.numer(), q.denom()))
}

pub fn cyclotomic_to_json(v: &Cyclotomic) -> Value {
    if let Some(q) = v.as_rational() {
        return rational_to_json(&q);
    }
    let terms: Vec<Value> = v
        .terms()
        .iter()
        .map(|(e, q)| {
            let s = if q.denom().is_one() { q.numer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) };
            json!([e, s])
        })
        .collect();
    json!({"n": v.conductor(), "terms": terms})
}

pub fn table_to_json(t: &CharacterTable) -> Value {
    let classes: Vec<Value> =
        t.classes.iter().map(|c| json!({"name": c.name, "size": c.size, "order": c.element_order})).collect();
    let rows: Vec<Value> = t.irreducibles.iter().map(|r| Value::Array(r.iter().map(cyclotomic_to_json).collect())).collect();
    json!({"name": t.name, "order": t.group_order, "classes": classes, "irreducibles": rows})
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = r#"{"name": "C2", "order": 2,
        "classes": [{"name": "1a", "size": 1, "order": 1}, {"name": "2a", "size": 1, "order": 2}],
        "irreducibles": [[1, 1], [1, -1]]}"#;

    #[test]
    fn parses_c2() {
        let t = parse_table(C2).unwrap();
        assert_eq!(t.class_count(), 2);
        assert_eq!(t.irreducibles[1][1], Cyclotomic::from_int(-1));
    }

    #[test]
    fn round_trips_through_json() {
        let t = parse_table(C2).unwrap();
        let again = parse_table(&table_to_json(&t).to_string()).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = C2.replace("[1, -1]", "[1, \"x\"]");
        let err = parse_table(&bad).unwrap_err();
        assert_eq!(err, field_err("irreducibles[1][1]", "cannot parse rational \"x\""));
        let short = C2.replace("[1, -1]", "[1]");
        assert!(matches!(parse_table(&short), Err(ParseError::Field { field, .. }) if field == "irreducibles[1]"));
        let swapped = C2.replace(r#"{"name": "1a", "size": 1, "order": 1}, {"name": "2a", "size": 1, "order": 2}"#,
            r#"{"name": "2a", "size": 1, "order": 2}, {"name": "1a", "size": 1, "order": 1}"#);
        assert!(matches!(parse_table(&swapped), Err(ParseError::Field { field, .. }) if field == "classes[0]"));
        assert!(matches!(parse_table("{"), Err(ParseError::Syntax { .. })));
        let no_order = C2.replace("\"order\": 2,", "");
        assert!(matches!(parse_table(&no_order), Err(ParseError::Field { field, .. }) if field == "order"));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6"), Some(Rational::new(BigInt::from(-1), BigInt::from(2))));
        assert_eq!(parse_rational("7"), Some(Rational::from_integer(BigInt::from(7))));
        assert_eq!(parse_rational("1/0"), None);
    }
}
