//! JSON file formats.
//!
//! Matrix files are `{"rows": [[...], ...]}`. Instance files are
//! `{"A": <matrix>, "q": [...], "certificate": {"X", "Y", "r", "s"}}` with `q`
//! and `certificate` optional; `A`, `X` and `Y` may be matrix objects or bare
//! row arrays. Literals are JSON numbers or strings (`"3"`, `"-2/7"`, `"0.1"`)
//! and are always read exactly. Output writes every rational as a string.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::hiddenz::Certificate;
use crate::rational::{format_rational, parse_rational};
use crate::{Error, RatMatrix, Rational, Result};

/// Contents of a matrix or instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputFile {
    pub a: RatMatrix,
    pub q: Option<Vec<Rational>>,
    pub certificate: Option<Certificate>,
}

fn bad(at: &str, what: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{at}: {what}"))
}

pub fn parse_literal(v: &Value, at: &str) -> Result<Rational> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(bad(at, format!("expected a number or string, found {other}"))),
    };
    parse_rational(&text).map_err(|e| bad(at, e))
}

pub fn parse_vector(v: &Value, at: &str) -> Result<Vec<Rational>> {
    let items = v.as_array().ok_or_else(|| bad(at, "expected an array"))?;
    items.iter().enumerate().map(|(i, x)| parse_literal(x, &format!("{at}[{i}]"))).collect()
}

/// Accepts `{"rows": [...]}` or a bare array of rows.
pub fn parse_matrix(v: &Value, at: &str) -> Result<RatMatrix> {
    let (rows, at) = match v {
        Value::Object(map) => (map.get("rows").ok_or_else(|| bad(at, "missing \"rows\""))?, format!("{at}.rows")),
        other => (other, at.to_string()),
    };
    let rows = rows.as_array().ok_or_else(|| bad(&at, "expected an array of rows"))?;
    if rows.is_empty() {
        return Err(bad(&at, "matrix has no rows"));
    }
    let parsed: Vec<Vec<Rational>> =
        rows.iter().enumerate().map(|(i, r)| parse_vector(r, &format!("{at}[{i}]"))).collect::<Result<_>>()?;
    let width = parsed[0].len();
    if let Some(i) = parsed.iter().position(|r| r.len() != width) {
        return Err(bad(&format!("{at}[{i}]"), format!("row has {} entries, expected {width}", parsed[i].len())));
    }
    RatMatrix::from_rows(parsed).map_err(|e| bad(&at, e))
}

pub fn parse_certificate(v: &Value, at: &str) -> Result<Certificate> {
    let map = v.as_object().ok_or_else(|| bad(at, "expected an object with X, Y, r, s"))?;
    let field = |k: &str| map.get(k).ok_or_else(|| bad(at, format!("missing \"{k}\"")));
    Ok(Certificate::new(
        parse_matrix(field("X")?, &format!("{at}.X"))?,
        parse_matrix(field("Y")?, &format!("{at}.Y"))?,
        parse_vector(field("r")?, &format!("{at}.r"))?,
        parse_vector(field("s")?, &format!("{at}.s"))?,
    ))
}

/// Parses either file shape from text. Syntax errors carry line and column.
pub fn parse_input(text: &str) -> Result<InputFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    let map = root.as_object().ok_or_else(|| bad("$", "expected an object"))?;
    if map.contains_key("rows") {
        return Ok(InputFile { a: parse_matrix(&root, "$")?, q: None, certificate: None });
    }
    let a = parse_matrix(map.get("A").ok_or_else(|| bad("$", "expected \"rows\" or \"A\""))?, "$.A")?;
    let n = a.order().map_err(|e| bad("$.A", e))?;
    let q = map.get("q").map(|v| parse_vector(v, "$.q")).transpose()?;
    if let Some(q) = &q {
        if q.len() != n {
            return Err(bad("$.q", format!("length {} does not match order {n}", q.len())));
        }
    }
    let certificate = match map.get("certificate") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_certificate(v, "$.certificate")?),
    };
    Ok(InputFile { a, q, certificate })
}

pub fn read_input(path: &Path) -> Result<InputFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse_input(&text).map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), strip_prefix(&e))))
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::InvalidInput(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn rational_json(v: &Rational) -> Value {
    Value::String(format_rational(v))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn rows_json(m: &RatMatrix) -> Value {
    Value::Array((0..m.n_rows()).map(|i| vector_json(m.row(i))).collect())
}

/// `{"rows": [...]}`, the matrix file shape.
pub fn matrix_json(m: &RatMatrix) -> Value {
    json!({ "rows": rows_json(m) })
}

pub fn certificate_json(c: &Certificate) -> Value {
    json!({
        "X": rows_json(&c.x),
        "Y": rows_json(&c.y),
        "r": vector_json(&c.r),
        "s": vector_json(&c.s),
    })
}

pub fn instance_json(a: &RatMatrix, q: Option<&[Rational]>, c: Option<&Certificate>) -> Value {
    let mut map = Map::new();
    map.insert("A".into(), matrix_json(a));
    if let Some(q) = q {
        map.insert("q".into(), vector_json(q));
    }
    if let Some(c) = c {
        map.insert("certificate".into(), certificate_json(c));
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints, ratio};

    #[test]
    fn decimals_are_exact() {
        let f = parse_input(r#"{"rows": [[1.6, "0.1"], ["-2/4", 3]]}"#).unwrap();
        assert_eq!(f.a.row(0), &[ratio(8, 5), ratio(1, 10)]);
        assert_eq!(f.a.row(1), &[ratio(-1, 2), int(3)]);
    }

    #[test]
    fn instance_with_certificate() {
        let text = r#"{
            "A": [[1,2,0],[0,1,0],[-1,0,1]],
            "q": [-1,-1,-1],
            "certificate": {"X": {"rows": [[1,-2,0],[0,1,0],[-1,-2,1]]}, "Y": [[1,0,0],[0,1,0],[-2,0,1]], "r": [3,8,0], "s": [0,0,1]}
        }"#;
        let f = parse_input(text).unwrap();
        assert_eq!(f.q.unwrap(), ints(&[-1, -1, -1]));
        assert_eq!(f.certificate.unwrap().s, ints(&[0, 0, 1]));
    }

    #[test]
    fn errors_name_the_location() {
        let e = parse_input("{\"rows\": [[1, 2],\n [3]]}").unwrap_err().to_string();
        assert!(e.contains("$.rows[1]"), "{e}");
        let e = parse_input("{\"rows\": [[1, \"x\"]]}").unwrap_err().to_string();
        assert!(e.contains("$.rows[0][1]"), "{e}");
        let e = parse_input("{\"rows\": [[1,\n 2]").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        let e = parse_input(r#"{"A": [[1]], "q": [1, 2]}"#).unwrap_err().to_string();
        assert!(e.contains("$.q"), "{e}");
    }

    #[test]
    fn round_trip() {
        let m = RatMatrix::from_rows(vec![vec![ratio(-7, 3), int(0)], vec![int(5), ratio(1, 9)]]).unwrap();
        let text = matrix_json(&m).to_string();
        assert_eq!(parse_input(&text).unwrap().a, m);
    }
}
