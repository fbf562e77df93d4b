//! Fan files.
//!
//! A fan file is a JSON document with three fields:
//!
//! ```json
//! {
//!   "rank": 2,
//!   "rays": [
//!     [0, 1],
//!     [2, 1]
//!   ],
//!   "max_cones": [
//!     [0, 1]
//!   ]
//! }
//! ```
//!
//! `max_cones` lists 0-based ray indices; `[]` is the fan `{0}`. Written
//! files use primitive rays in lexicographic order and sorted cone lists, so
//! reading and re-writing a written file reproduces it byte for byte.

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use crate::cone::IntVec;
use crate::fan::{validate, Fan, FanError, FanValidation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field { field: field.into(), message: message.into() }
}

/// Raw contents of a fan file, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<IntVec>,
    pub max_cones: Vec<Vec<usize>>,
}

fn parse_integer(v: &Value, field: &str) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            s.parse::<BigInt>().map_err(|_| field_err(field, format!("expected an integer, found {s}")))
        }
        other => Err(field_err(field, format!("expected an integer, found {other}"))),
    }
}

fn parse_index(v: &Value, field: &str) -> Result<usize, ParseError> {
    let n = parse_integer(v, field)?;
    usize::try_from(&n).map_err(|_| field_err(field, format!("expected a nonnegative index, found {n}")))
}

fn parse_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| field_err(field, "expected an array"))
}

pub fn parse_fan_file(text: &str) -> Result<FanFile, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = doc.as_object().ok_or_else(|| field_err("<root>", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "rank" | "rays" | "max_cones") {
            return Err(field_err(key.as_str(), "unknown field"));
        }
    }
    let get = |k: &str| obj.get(k).ok_or_else(|| field_err(k, "missing"));

    let rank = parse_index(get("rank")?, "rank")?;
    let rays = parse_array(get("rays")?, "rays")?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let name = format!("rays[{i}]");
            parse_array(r, &name)?
                .iter()
                .enumerate()
                .map(|(j, x)| parse_integer(x, &format!("rays[{i}][{j}]")))
                .collect::<Result<IntVec, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let max_cones = parse_array(get("max_cones")?, "max_cones")?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let name = format!("max_cones[{i}]");
            parse_array(c, &name)?
                .iter()
                .enumerate()
                .map(|(j, x)| parse_index(x, &format!("max_cones[{i}][{j}]")))
                .collect::<Result<Vec<usize>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FanFile { rank, rays, max_cones })
}

impl FanFile {
    pub fn from_fan(fan: &Fan) -> FanFile {
        let mut max_cones = fan.max_cone_ray_ids();
        if max_cones.len() == 1 && max_cones[0].is_empty() {
            max_cones.clear();
        }
        max_cones.sort();
        FanFile { rank: fan.ambient_rank(), rays: fan.rays().to_vec(), max_cones }
    }

    pub fn validate(&self) -> FanValidation {
        validate(self.rank, &self.rays, &self.max_cones)
    }

    pub fn to_fan(&self) -> Result<Fan, FanError> {
        Fan::new(self.rank, &self.rays, &self.max_cones)
    }

    pub fn to_json_string(&self) -> String {
        fn list<T: ToString>(items: &[T]) -> String {
            let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
            format!("[{}]", parts.join(", "))
        }
        fn block(rows: &[String]) -> String {
            if rows.is_empty() {
                return "[]".to_string();
            }
            let body: Vec<String> = rows.iter().map(|r| format!("    {r}")).collect();
            format!("[\n{}\n  ]", body.join(",\n"))
        }
        let rays: Vec<String> = self.rays.iter().map(|r| list(r)).collect();
        let cones: Vec<String> = self.max_cones.iter().map(|c| list(c)).collect();
        format!(
            "{{\n  \"rank\": {},\n  \"rays\": {},\n  \"max_cones\": {}\n}}\n",
            self.rank,
            block(&rays),
            block(&cones)
        )
    }
}

/// Canonical file contents for a fan.
pub fn write_fan(fan: &Fan) -> String {
    FanFile::from_fan(fan).to_json_string()
}

pub fn read_fan(text: &str) -> Result<Fan, ReadError> {
    Ok(parse_fan_file(text)?.to_fan()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[cfg(test)]
mod tests {
    use super::*;

    const BLOWUP_A3: &str = r#"{"rank": 3, "rays": [[1,1,1],[1,0,0],[0,1,0],[0,0,1]],
        "max_cones": [[0,1,2],[0,2,3],[0,1,3]]}"#;

    #[test]
    fn canonical_round_trip() {
        let fan = read_fan(BLOWUP_A3).unwrap();
        let written = write_fan(&fan);
        let again = write_fan(&read_fan(&written).unwrap());
        assert_eq!(written, again);
        assert_eq!(read_fan(&written).unwrap(), fan);
        assert!(written.starts_with("{\n  \"rank\": 3,\n  \"rays\": [\n    [0, 0, 1],"));
    }

    #[test]
    fn non_primitive_input_is_normalised() {
        let fan = read_fan(r#"{"rank":2,"rays":[[2,4],[3,0]],"max_cones":[[1,0]]}"#).unwrap();
        let f = parse_fan_file(&write_fan(&fan)).unwrap();
        let expected: Vec<IntVec> =
            vec![vec![BigInt::from(1), BigInt::from(0)], vec![BigInt::from(1), BigInt::from(2)]];
        assert_eq!(f.rays, expected);
        assert_eq!(f.max_cones, vec![vec![0, 1]]);
    }

    #[test]
    fn torus_file() {
        let fan = read_fan(r#"{"rank":2,"rays":[],"max_cones":[]}"#).unwrap();
        assert_eq!(fan, Fan::torus(2));
        assert_eq!(write_fan(&fan), "{\n  \"rank\": 2,\n  \"rays\": [],\n  \"max_cones\": []\n}\n");
    }

    #[test]
    fn diagnostics() {
        match parse_fan_file("{\"rank\": 2,\n \"rays\": [[1, 0]\n") {
            Err(ParseError::Syntax { line, .. }) => assert!(line >= 2),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_fan_file(r#"{"rank":2,"rays":[[1,0.5]],"max_cones":[]}"#).unwrap_err(),
            field_err("rays[0][1]", "expected an integer, found 0.5")
        );
        assert!(matches!(
            parse_fan_file(r#"{"rank":2,"rays":[]}"#),
            Err(ParseError::Field { field, .. }) if field == "max_cones"
        ));
        assert!(matches!(
            parse_fan_file(r#"{"rank":2,"rays":[],"max_cones":[[-1]]}"#),
            Err(ParseError::Field { field, .. }) if field == "max_cones[0][0]"
        ));
        assert!(matches!(
            parse_fan_file(r#"{"rank":2,"rays":[],"max_cones":[],"extra":1}"#),
            Err(ParseError::Field { field, .. }) if field == "extra"
        ));
    }

    #[test]
    fn big_entries_survive() {
        let text = r#"{"rank":2,"rays":[[1,123456789012345678901234567890]],"max_cones":[[0]]}"#;
        let fan = read_fan(text).unwrap();
        assert!(write_fan(&fan).contains("123456789012345678901234567890"));
    }
}
