//! The JSON arrangement format.
//!
//! ```json
//! {
//!   "ambient_dim": 2,
//!   "field": "Q",
//!   "planes": [
//!     { "label": "x", "equations": [["1", "0", "0"]] },
//!     { "equations": [["0", "1", "0"]] }
//!   ]
//! }
//! ```
//!
//! Each equation row `[a_1, ..., a_N, b]` means `a · x = b`. Entries are
//! rational strings (`"3/4"`), JSON integers, or for `"Q(i)"` also Gaussian
//! strings (`"1-2i"`) and `{"re": ..., "im": ...}` records.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Arrangement;
use crate::linalg::{Field, FieldTag, Gaussian, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDocument {
    pub ambient_dim: usize,
    pub field: FieldTag,
    pub planes: Vec<PlaneDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub equations: Vec<Vec<Value>>,
}

/// An arrangement over whichever field its document declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyArrangement {
    Rational(Arrangement<Rational>),
    Gaussian(Arrangement<Gaussian>),
}

impl AnyArrangement {
    pub fn field(&self) -> FieldTag {
        match self {
            AnyArrangement::Rational(_) => FieldTag::Rational,
            AnyArrangement::Gaussian(_) => FieldTag::Gaussian,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            AnyArrangement::Rational(a) => a.ambient_dim(),
            AnyArrangement::Gaussian(a) => a.ambient_dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyArrangement::Rational(a) => a.len(),
            AnyArrangement::Gaussian(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The arrangement as a real one: complex inputs are realified.
    pub fn to_real(&self) -> Arrangement<Rational> {
        match self {
            AnyArrangement::Rational(a) => a.clone(),
            AnyArrangement::Gaussian(a) => a.realify(),
        }
    }

    pub fn to_document(&self) -> ArrangementDocument {
        fn planes<F: Field>(a: &Arrangement<F>) -> Vec<PlaneDocument> {
            a.planes()
                .iter()
                .map(|p| PlaneDocument {
                    label: Some(p.label.clone()),
                    equations: p
                        .equations
                        .iter()
                        .map(|r| r.iter().map(|v| serde_json::to_value(v.to_scalar()).expect("scalars serialize")).collect())
                        .collect(),
                })
                .collect()
        }
        let planes = match self {
            AnyArrangement::Rational(a) => planes(a),
            AnyArrangement::Gaussian(a) => planes(a),
        };
        ArrangementDocument { ambient_dim: self.ambient_dim(), field: self.field(), planes }
    }
}

pub fn parse_arrangement(text: &str) -> Result<AnyArrangement> {
    let doc: ArrangementDocument = serde_json::from_str(text).map_err(|e| Error::Json {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    doc.build()
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

impl ArrangementDocument {
    pub fn build(&self) -> Result<AnyArrangement> {
        if self.planes.is_empty() {
            return Err(format_error("planes", "at least one plane is required"));
        }
        Ok(match self.field {
            FieldTag::Rational => AnyArrangement::Rational(self.build_over(parse_rational)?),
            FieldTag::Gaussian => AnyArrangement::Gaussian(self.build_over(parse_gaussian)?),
        })
    }

    fn build_over<F: Field>(&self, parse: fn(&Value) -> std::result::Result<F, String>) -> Result<Arrangement<F>> {
        let n = self.ambient_dim;
        let mut planes = Vec::with_capacity(self.planes.len());
        for (i, p) in self.planes.iter().enumerate() {
            if p.equations.is_empty() {
                return Err(format_error(&format!("planes[{i}].equations"), "a plane needs at least one equation"));
            }
            let mut rows = Vec::with_capacity(p.equations.len());
            for (j, row) in p.equations.iter().enumerate() {
                if row.len() != n + 1 {
                    return Err(format_error(
                        &format!("planes[{i}].equations[{j}]"),
                        &format!("expected {} entries (N coefficients and a constant), found {}", n + 1, row.len()),
                    ));
                }
                let parsed = row
                    .iter()
                    .enumerate()
                    .map(|(k, v)| parse(v).map_err(|m| format_error(&format!("planes[{i}].equations[{j}][{k}]"), &m)))
                    .collect::<Result<Vec<F>>>()?;
                rows.push(parsed);
            }
            planes.push((p.label.clone(), rows));
        }
        Arrangement::new(n, planes)
    }
}

fn format_error(path: &str, message: &str) -> Error {
    Error::Format { path: path.to_string(), message: message.to_string() }
}

fn parse_rational(v: &Value) -> std::result::Result<Rational, String> {
    match v {
        Value::String(s) => s.parse().map_err(|e: crate::linalg::ParseScalarError| e.to_string()),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse().map_err(|e: crate::linalg::ParseScalarError| e.to_string()),
        Value::Number(n) => Err(format!("`{n}` is not exact; write rationals as strings like \"3/4\"")),
        other => Err(format!("expected a rational, found {}", kind(other))),
    }
}

fn parse_gaussian(v: &Value) -> std::result::Result<Gaussian, String> {
    match v {
        Value::String(s) => s.parse().map_err(|e: crate::linalg::ParseScalarError| e.to_string()),
        Value::Object(map) => {
            let part = |key: &str| match map.get(key) {
                Some(x) => parse_rational(x).map_err(|m| format!("{key}: {m}")),
                None => Ok(Rational::from_i64(0)),
            };
            if let Some(extra) = map.keys().find(|k| *k != "re" && *k != "im") {
                return Err(format!("unexpected key `{extra}` in Gaussian record"));
            }
            Ok(Gaussian::new(part("re")?, part("im")?))
        }
        Value::Number(_) => parse_rational(v).map(Gaussian::from_rational),
        other => Err(format!("expected a Gaussian rational, found {}", kind(other))),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_cross() {
        let text = r#"{"ambient_dim": 2, "field": "Q", "planes": [
            {"label": "x", "equations": [["1", "0", "0"]]},
            {"equations": [[0, 1, 0]]}
        ]}"#;
        let a = parse_arrangement(text).unwrap();
        assert_eq!((a.len(), a.ambient_dim(), a.field()), (2, 2, FieldTag::Rational));
        let AnyArrangement::Rational(r) = &a else { panic!("rational expected") };
        assert_eq!(r.labels(), vec!["x".to_string(), "L2".to_string()]);
    }

    #[test]
    fn inconsistent_plane_is_named() {
        let text = r#"{"ambient_dim": 2, "field": "Q", "planes": [
            {"label": "bad", "equations": [["1", "0", "0"], ["1", "0", "1"]]}
        ]}"#;
        assert_eq!(parse_arrangement(text).unwrap_err(), Error::InconsistentPlane { index: 1, label: "bad".into() });
    }

    #[test]
    fn gaussian_document() {
        let text = r#"{"ambient_dim": 3, "field": "Q(i)", "planes": [
            {"equations": [["1", "-1", "0", "0"]]},
            {"equations": [[{"re": "1"}, "0", {"re": "-1", "im": "0"}, "0"]]},
            {"equations": [["0", "1", "-1", "0"]]}
        ]}"#;
        let a = parse_arrangement(text).unwrap();
        assert_eq!((a.len(), a.ambient_dim(), a.field()), (3, 3, FieldTag::Gaussian));
        let again = parse_arrangement(&serde_json::to_string(&a.to_document()).unwrap()).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn diagnostics() {
        let e = parse_arrangement(r#"{"ambient_dim": 1, "field": "Q", "planes": [{"equations": [["1", 0.5]]}]}"#).unwrap_err();
        assert!(matches!(&e, Error::Format { path, .. } if path == "planes[0].equations[0][1]"), "{e}");
        let e = parse_arrangement(r#"{"ambient_dim": 1, "field": "Q", "planes": [{"equations": [["i", "0"]]}]}"#).unwrap_err();
        assert!(matches!(e, Error::Format { .. }));
        let e = parse_arrangement("{\n  \"ambient_dim\": 1,\n  \"field\": \"R\"\n}").unwrap_err();
        assert!(matches!(e, Error::Json { line: 3, .. }), "{e:?}");
        let e = parse_arrangement(r#"{"ambient_dim": 2, "field": "Q", "planes": [{"equations": [["1", "0"]]}]}"#).unwrap_err();
        assert!(matches!(&e, Error::Format { path, .. } if path == "planes[0].equations[0]"));
    }
}
