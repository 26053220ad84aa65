//! JSON file formats.
//!
//! A module file looks like
//!
//! ```json
//! {
//!   "n": 3, "tau": "fb", "field": "gfp:101",
//!   "bottom": { "dims": [1, 2, 1], "maps": [[[1], [0]], [[0], [1]]] },
//!   "top":    { "dims": [1, 1, 1], "maps": [[[1]], [[1]]] },
//!   "vertical": [[[1]], [[1, 1]], [[1]]]
//! }
//! ```
//!
//! Matrices are lists of rows; their shapes follow from the dimensions, so an
//! empty matrix is written `[]` (or a list of empty rows). Entries are integers
//! in `GF(p)` and integers or `"num/den"` strings over the rationals.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::intervals::Orientation;
use crate::ladder::CLRep;
use crate::linalg::Matrix;
use crate::zigzag::{shape_violations, ZigzagRep};

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    let f = m.field();
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| f.elem_to_json(x)).collect())).collect())
}

/// Parse a matrix whose shape is known in advance.
pub fn matrix_from_json<F: Field>(f: &F, v: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix<F>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("{what}: expected a list of rows")))?;
    if (rows == 0 || cols == 0) && arr.iter().all(|r| r.as_array().is_some_and(|x| x.is_empty()))
        && (arr.is_empty() || arr.len() == rows) {
            return Ok(Matrix::zeros(f, rows, cols));
        }
    if arr.len() != rows {
        return Err(Error::DimensionMismatch(format!("{what}: {} rows, expected {rows}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows);
    for (i, r) in arr.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| Error::Parse(format!("{what}: row {i} is not a list")))?;
        if r.len() != cols {
            return Err(Error::DimensionMismatch(format!("{what}: row {i} has {} entries, expected {cols}", r.len())));
        }
        data.push(r.iter().map(|x| f.elem_from_json(x)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(f, cols, data)
}

fn dims_from_json(v: Option<&Value>, what: &str) -> Result<Vec<usize>> {
    let v = v.ok_or_else(|| Error::Parse(format!("{what}: missing dims")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("{what}: bad dims ({e})")))
}

fn row_to_json<F: Field>(z: &ZigzagRep<F>) -> Value {
    json!({
        "dims": z.dims(),
        "maps": z.maps().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

fn row_from_json<F: Field>(f: &F, tau: &Orientation, v: &Value, what: &str) -> Result<ZigzagRep<F>> {
    let dims = dims_from_json(v.get("dims"), what)?;
    if dims.len() != tau.n() {
        return Err(Error::DimensionMismatch(format!("{what}: {} dims for {} vertices", dims.len(), tau.n())));
    }
    let maps_v = match v.get("maps") {
        Some(Value::Array(a)) => a.clone(),
        None if tau.n() == 1 => Vec::new(),
        _ => return Err(Error::Parse(format!("{what}: missing maps"))),
    };
    if maps_v.len() != tau.n() - 1 {
        return Err(Error::DimensionMismatch(format!("{what}: {} maps for {} arrows", maps_v.len(), tau.n() - 1)));
    }
    let mut maps = Vec::new();
    for (k, m) in maps_v.iter().enumerate() {
        let (s, t) = tau.arrow_ends(k + 1);
        maps.push(matrix_from_json(f, m, dims[t - 1], dims[s - 1], &format!("{what} map {}", k + 1))?);
    }
    let bad = shape_violations(tau, &dims, &maps);
    if !bad.is_empty() {
        return Err(Error::DimensionMismatch(bad.join("; ")));
    }
    ZigzagRep::new(f, tau, dims, maps)
}

pub fn module_to_json<F: Field>(m: &CLRep<F>) -> Value {
    json!({
        "n": m.n(),
        "tau": m.orientation().to_string(),
        "field": m.field().spec().to_string(),
        "bottom": row_to_json(m.bottom()),
        "top": row_to_json(m.top()),
        "vertical": m.vertical().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn orientation_from_json(v: &Value) -> Result<Orientation> {
    let tau = match v.get("tau") {
        Some(Value::String(s)) => Orientation::parse(s)?,
        None => Orientation::parse("")?,
        _ => return Err(Error::Parse("tau must be a string over {f, b}".into())),
    };
    if let Some(n) = v.get("n") {
        let n = n.as_u64().ok_or_else(|| Error::Parse("n must be a count".into()))? as usize;
        if n != tau.n() {
            return Err(Error::Parse(format!("n = {n} but tau has {} vertices", tau.n())));
        }
    }
    Ok(tau)
}

/// Field named in a file, defaulting to `GF(101)`.
pub fn field_spec_from_json(v: &Value) -> Result<FieldSpec> {
    match v.get("field") {
        None | Some(Value::Null) => Ok(FieldSpec::default()),
        Some(Value::String(s)) => s.parse(),
        Some(Value::Number(n)) => n.to_string().parse(),
        Some(_) => Err(Error::Parse("field must be a string like \"gfp:101\" or \"rational\"".into())),
    }
}

pub fn module_from_json<F: Field>(f: &F, v: &Value) -> Result<CLRep<F>> {
    let tau = orientation_from_json(v)?;
    if tau.n() > crate::ladder::MAX_LADDER {
        return Err(Error::RepresentationInfinite { n: tau.n() });
    }
    let bottom = row_from_json(f, &tau, v.get("bottom").ok_or_else(|| Error::Parse("missing bottom".into()))?, "bottom")?;
    let top = row_from_json(f, &tau, v.get("top").ok_or_else(|| Error::Parse("missing top".into()))?, "top")?;
    let vs = v
        .get("vertical")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing vertical maps".into()))?;
    if vs.len() != tau.n() {
        return Err(Error::DimensionMismatch(format!("{} vertical maps for {} vertices", vs.len(), tau.n())));
    }
    let vertical = vs
        .iter()
        .enumerate()
        .map(|(k, m)| matrix_from_json(f, m, top.dims()[k], bottom.dims()[k], &format!("vertical map {}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    CLRep::new_validated(bottom, top, vertical)
}

pub fn zigzag_to_json<F: Field>(z: &ZigzagRep<F>) -> Value {
    json!({
        "tau": z.orientation().to_string(),
        "field": z.field().spec().to_string(),
        "dims": z.dims(),
        "maps": z.maps().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn zigzag_from_json<F: Field>(f: &F, v: &Value) -> Result<ZigzagRep<F>> {
    let tau = orientation_from_json(v)?;
    if tau.n() > crate::intervals::MAX_AN {
        return Err(Error::Parse(format!("zigzag modules are limited to {} vertices", crate::intervals::MAX_AN)));
    }
    row_from_json(f, &tau, v, "zigzag")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::cl3fb_dimension_two;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn module_round_trip() {
        let f = PrimeField::default();
        let (a, b) = cl3fb_dimension_two(&f);
        for m in [a, b] {
            let v = module_to_json(&m);
            assert_eq!(module_from_json(&f, &v).unwrap(), m);
        }
    }

    #[test]
    fn rejects_bad_files() {
        let f = Rationals;
        let long = json!({"tau": "ffff", "bottom": {}, "top": {}, "vertical": []});
        assert!(matches!(module_from_json(&f, &long), Err(Error::RepresentationInfinite { n: 5 })));
        let bad = json!({
            "tau": "f",
            "bottom": {"dims": [1, 1], "maps": [[[1]]]},
            "top": {"dims": [1, 1], "maps": [[[1]]]},
            "vertical": [[["1/2"]], [[1]]]
        });
        assert!(matches!(module_from_json(&f, &bad), Err(Error::InvalidModule(_))));
        let shape = json!({
            "tau": "f",
            "bottom": {"dims": [1, 1], "maps": [[[1, 0]]]},
            "top": {"dims": [1, 1], "maps": [[[1]]]},
            "vertical": [[[1]], [[1]]]
        });
        assert!(matches!(module_from_json(&f, &shape), Err(Error::DimensionMismatch(_))));
    }
}
