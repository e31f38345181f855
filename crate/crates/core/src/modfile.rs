//! The `.mod.json` module format:
//!
//! ```json
//! { "algebra": "alg.qa", "dim": [1, 2, 1], "arrows": { "a1": [[1, 0]], "b1": [["1/2"], [0]] } }
//! ```
//!
//! Matrices are row-major, either nested rows or one flat list. Entries
//! are integers or rational strings. Arrows left out act as zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{from_rational, parse_rational, Matrix, Scalar};
use crate::quiver::Algebra;
use crate::rep::Representation;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub dim: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Value>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::ModuleFile(msg.into())
}

fn scalar<F: Scalar>(v: &Value) -> Result<F> {
    let q = match v {
        Value::Number(n) => n.as_i64().map(|i| parse_rational(&i.to_string())).unwrap_or(None),
        Value::String(s) => parse_rational(s),
        _ => None,
    }
    .ok_or_else(|| bad(format!("`{v}` is not an integer or rational string")))?;
    from_rational(&q).ok_or_else(|| bad(format!("`{v}` is not defined in {}", F::field_tag())))
}

fn matrix<F: Scalar>(name: &str, v: &Value, rows: usize, cols: usize) -> Result<Matrix<F>> {
    let Value::Array(items) = v else {
        return Err(bad(format!("arrow {name}: expected an array")));
    };
    let flat: Vec<&Value> = if items.iter().all(Value::is_array) && !items.is_empty() {
        if items.len() != rows {
            return Err(Error::Shape(format!("arrow {name}: {} rows given, {rows} expected", items.len())));
        }
        let mut out = Vec::new();
        for row in items {
            let row = row.as_array().expect("checked");
            if row.len() != cols {
                return Err(Error::Shape(format!("arrow {name}: row of length {}, {cols} expected", row.len())));
            }
            out.extend(row);
        }
        out
    } else {
        items.iter().collect()
    };
    if flat.len() != rows * cols {
        return Err(Error::Shape(format!("arrow {name}: {} entries for a {rows}x{cols} matrix", flat.len())));
    }
    Matrix::new(rows, cols, flat.into_iter().map(scalar).collect::<Result<_>>()?)
}

/// Parses a module and checks it against the relations of `alg`.
pub fn parse_module<F: Scalar>(alg: &Algebra<F>, text: &str) -> Result<(Representation<F>, Option<String>)> {
    let file: ModuleFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    if file.dim.len() != alg.num_vertices() {
        return Err(Error::Shape(format!("{} dimensions for {} vertices", file.dim.len(), alg.num_vertices())));
    }
    for name in file.arrows.keys() {
        if alg.arrow_index(name).is_none() {
            return Err(bad(format!("unknown arrow `{name}`")));
        }
    }
    let maps = alg
        .arrows()
        .iter()
        .map(|arrow| {
            let (rows, cols) = (file.dim[arrow.target], file.dim[arrow.source]);
            match file.arrows.get(&arrow.name) {
                Some(v) => matrix(&arrow.name, v, rows, cols),
                None => Ok(Matrix::zeros(rows, cols)),
            }
        })
        .collect::<Result<_>>()?;
    let m = Representation::new(alg, file.dim, maps)?;
    Ok((m, file.algebra))
}

fn entry_value<F: Scalar>(x: &F) -> Value {
    let s = x.to_string();
    match s.parse::<i64>() {
        Ok(i) => Value::from(i),
        Err(_) => Value::String(s),
    }
}

pub fn module_file<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, algebra: Option<&str>) -> ModuleFile {
    let arrows = alg
        .arrows()
        .iter()
        .enumerate()
        .filter(|(a, _)| !m.map(*a).is_zero())
        .map(|(a, arrow)| {
            let mat = m.map(a);
            let rows = (0..mat.rows()).map(|r| Value::Array(mat.row(r).iter().map(entry_value).collect())).collect();
            (arrow.name.clone(), Value::Array(rows))
        })
        .collect();
    ModuleFile { algebra: algebra.map(str::to_string), dim: m.dims().to_vec(), arrows }
}

pub fn module_to_json<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, algebra: Option<&str>) -> String {
    serde_json::to_string_pretty(&module_file(alg, m, algebra)).expect("module serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures::{alg_a_module, Fixture};

    #[test]
    fn round_trip() {
        let a = Fixture::AlgA.algebra::<Q>().unwrap();
        let m = alg_a_module(&a);
        let text = module_to_json(&a, &m, Some("a.qa"));
        let (back, path) = parse_module(&a, &text).unwrap();
        assert_eq!(back, m);
        assert_eq!(path.as_deref(), Some("a.qa"));
    }

    #[test]
    fn formats_and_errors() {
        let b = Fixture::AlgB.algebra::<Q>().unwrap();
        let (m, _) = parse_module(&b, r#"{"dim": [1, 1, 0], "arrows": {"a": ["1/2"]}}"#).unwrap();
        assert_eq!(m.map(0)[(0, 0)], Q::new(1.into(), 2.into()));
        let err = parse_module(&b, r#"{"dim": [1, 1, 1], "arrows": {"a": [[1]], "b": [[1]]}}"#).unwrap_err();
        assert!(matches!(err, Error::RelationViolation(_)));
        assert!(matches!(parse_module(&b, r#"{"dim": [1, 1, 0], "arrows": {"z": [[1]]}}"#), Err(Error::ModuleFile(_))));
        assert!(matches!(parse_module(&b, r#"{"dim": [1, 2, 0], "arrows": {"a": [[1]]}}"#), Err(Error::Shape(_))));
        assert!(parse_module(&b, "not json").is_err());
    }
}
