//! JSON documents for representations and morphisms.
//!
//! A representation is `{"field": "q", "quiver": "kronecker" | {...}, "dims": {"x": 1, ...},
//! "maps": {"alpha": [["1", "0"], ...], ...}}`; a morphism is
//! `{"source": {...}, "target": {...}, "comps": {"x": [[...]], ...}}`.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::kronecker::kronecker_quiver;
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{Quiver, QuiverDoc, KRONECKER};
use crate::rep::{Morphism, Representation};

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!(m.to_strings())
}

fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) => field.parse_scalar(&n.to_string()),
        _ => Err(schema(format!("matrix entry {v} is neither a string nor an integer"))),
    }
}

/// Reads a row-major nested array of the given shape.
pub fn matrix_from_json(field: Field, v: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    let arr = v.as_array().ok_or_else(|| schema(format!("{what}: expected an array of rows")))?;
    if arr.len() != rows {
        return Err(schema(format!("{what}: expected {rows} rows, found {}", arr.len())));
    }
    let mut out = Matrix::zeros(field, rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let r = row.as_array().ok_or_else(|| schema(format!("{what}: row {i} is not an array")))?;
        if r.len() != cols {
            return Err(schema(format!("{what}: row {i} has {} entries, expected {cols}", r.len())));
        }
        for (j, e) in r.iter().enumerate() {
            out.set(i, j, scalar_from_json(field, e)?);
        }
    }
    Ok(out)
}

fn quiver_to_json(q: &Quiver) -> Value {
    if q.is_kronecker() {
        json!(KRONECKER)
    } else {
        serde_json::to_value(QuiverDoc::from(q)).expect("quiver documents serialise")
    }
}

pub fn quiver_from_json(v: &Value) -> Result<Arc<Quiver>> {
    match v {
        Value::String(s) if s == KRONECKER => Ok(kronecker_quiver()),
        Value::String(s) => Err(schema(format!("unknown reserved quiver name `{s}`"))),
        _ => {
            let doc: QuiverDoc = serde_json::from_value(v.clone()).map_err(|e| schema(format!("quiver: {e}")))?;
            let q = doc.build()?;
            Ok(if q.is_kronecker() { kronecker_quiver() } else { Arc::new(q) })
        }
    }
}

pub fn representation_to_json(m: &Representation) -> Value {
    let q = m.quiver();
    let dims: Map<String, Value> = q.vertices().iter().zip(m.dims()).map(|(v, d)| (v.clone(), json!(d))).collect();
    let maps: Map<String, Value> =
        q.arrows().iter().zip(m.maps()).map(|(a, f)| (a.name.clone(), matrix_to_json(f))).collect();
    json!({
        "field": m.field().to_string(),
        "quiver": quiver_to_json(q),
        "dims": dims,
        "maps": maps,
    })
}

/// Parses a representation document; `expected` rejects documents over another field.
pub fn representation_from_json(v: &Value, expected: Option<Field>) -> Result<Representation> {
    let obj = v.as_object().ok_or_else(|| schema("representation must be a JSON object"))?;
    let field = match (obj.get("field"), expected) {
        (Some(Value::String(s)), Some(f)) => {
            let g: Field = s.parse()?;
            if g != f {
                return Err(Error::FieldMismatch(g.to_string(), f.to_string()));
            }
            f
        }
        (Some(Value::String(s)), None) => s.parse()?,
        (Some(_), _) => return Err(schema("`field` must be a string")),
        (None, Some(f)) => f,
        (None, None) => Field::Rational,
    };
    let q = quiver_from_json(obj.get("quiver").unwrap_or(&json!(KRONECKER)))?;
    let dims_obj = obj.get("dims").and_then(Value::as_object).ok_or_else(|| schema("missing `dims` object"))?;
    for k in dims_obj.keys() {
        q.vertex_index(k)?;
    }
    let dims = q
        .vertices()
        .iter()
        .map(|v| {
            dims_obj.get(v).map_or(Ok(0), |d| {
                d.as_u64().map(|d| d as usize).ok_or_else(|| schema(format!("dims.{v} is not a count")))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let maps_obj = obj.get("maps").and_then(Value::as_object).ok_or_else(|| schema("missing `maps` object"))?;
    for k in maps_obj.keys() {
        q.arrow_index(k)?;
    }
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.target], dims[a.source]);
            match maps_obj.get(&a.name) {
                Some(m) => matrix_from_json(field, m, r, c, &format!("maps.{}", a.name)),
                None if r == 0 || c == 0 => Ok(Matrix::zeros(field, r, c)),
                None => Err(schema(format!("missing map for arrow `{}`", a.name))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(q, field, dims, maps)
}

pub fn morphism_to_json(f: &Morphism) -> Value {
    let q = f.source().quiver();
    let comps: Map<String, Value> =
        q.vertices().iter().zip(f.comps()).map(|(v, c)| (v.clone(), matrix_to_json(c))).collect();
    json!({
        "source": representation_to_json(f.source()),
        "target": representation_to_json(f.target()),
        "comps": comps,
    })
}

pub fn morphism_from_json(v: &Value, expected: Option<Field>) -> Result<Morphism> {
    let obj = v.as_object().ok_or_else(|| schema("morphism must be a JSON object"))?;
    let source = representation_from_json(obj.get("source").ok_or_else(|| schema("missing `source`"))?, expected)?;
    let target = representation_from_json(obj.get("target").ok_or_else(|| schema("missing `target`"))?, expected)?;
    source.check_compatible(&target)?;
    let comps_obj = obj.get("comps").and_then(Value::as_object).ok_or_else(|| schema("missing `comps` object"))?;
    let q = source.quiver().clone();
    let comps = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let (r, c) = (target.dim(i), source.dim(i));
            match comps_obj.get(v) {
                Some(m) => matrix_from_json(source.field(), m, r, c, &format!("comps.{v}")),
                None if r == 0 || c == 0 => Ok(Matrix::zeros(source.field(), r, c)),
                None => Err(schema(format!("missing component at vertex `{v}`"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(source, target, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::{make_indec, IndecLabel};

    #[test]
    fn round_trip_rational() {
        let q = Field::Rational;
        let m = make_indec(q, &IndecLabel::parse_quiet(q, "R2@-1/3").unwrap()).unwrap();
        let text = serde_json::to_string(&representation_to_json(&m)).unwrap();
        let back = representation_from_json(&serde_json::from_str(&text).unwrap(), None).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn wrong_shape_is_a_schema_error() {
        let doc = json!({"field": "q", "quiver": "kronecker", "dims": {"x": 1, "y": 1},
                         "maps": {"alpha": [["1", "0"]], "beta": [["1"]]}});
        assert!(matches!(representation_from_json(&doc, None), Err(Error::Schema(_))));
    }

    #[test]
    fn field_mismatch_detected() {
        let doc = json!({"field": "gf:5", "dims": {"x": 0, "y": 1}, "maps": {}});
        assert!(matches!(representation_from_json(&doc, Some(Field::Rational)), Err(Error::FieldMismatch(..))));
        let m = representation_from_json(&doc, Some(Field::Prime(5))).unwrap();
        assert_eq!(m.dims(), &[0, 1]);
    }

    #[test]
    fn custom_quiver_and_morphism() {
        let doc = json!({
            "field": "q",
            "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]},
            "dims": {"1": 1, "2": 1},
            "maps": {"a": [[2]]}
        });
        let m = representation_from_json(&doc, None).unwrap();
        let f = Morphism::identity(&m);
        let back = morphism_from_json(&morphism_to_json(&f), None).unwrap();
        assert_eq!(back.comps(), f.comps());
    }
}
