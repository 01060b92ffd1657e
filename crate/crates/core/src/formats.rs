//! JSON formats for user-supplied states and channels.
//!
//! A matrix is an array of rows and a row is an array of `[re, im]` pairs:
//!
//! ```json
//! {"name": "bit_flip", "kraus": [[[[0.6, 0], [0, 0]], [[0, 0], [0.6, 0]]], ...]}
//! ```
//!
//! A density matrix file is either a bare matrix or `{"rho": matrix}`.
//! Errors carry the JSON path of the offending entry, e.g. `kraus[1][0][1]`.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, KrausChannel};

/// Largest accepted matrix dimension.
pub const MAX_DIM: usize = 64;

fn format_err(path: &str, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_string(),
        message: message.into(),
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

fn parse_number(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format_err(path, format!("expected a finite number, found {}", kind(v))))
}

fn parse_entry(v: &Value, path: &str) -> Result<Complex64> {
    let pair = v
        .as_array()
        .ok_or_else(|| format_err(path, format!("expected [re, im] pair, found {}", kind(v))))?;
    match pair.as_slice() {
        [re, im] => Ok(Complex64::new(
            parse_number(re, &format!("{path}[0]"))?,
            parse_number(im, &format!("{path}[1]"))?,
        )),
        [_] => Err(format_err(path, "missing imaginary part in [re, im] pair")),
        other => Err(format_err(
            path,
            format!("expected [re, im] pair, found {} elements", other.len()),
        )),
    }
}

/// Parses one matrix value located at `path`.
pub fn parse_matrix(v: &Value, path: &str) -> Result<ComplexMatrix> {
    let rows = v.as_array().ok_or_else(|| {
        format_err(
            path,
            format!("expected matrix (array of rows), found {}", kind(v)),
        )
    })?;
    let dim = rows.len();
    if dim == 0 {
        return Err(format_err(path, "matrix has no rows"));
    }
    if dim > MAX_DIM {
        return Err(format_err(
            path,
            format!("dimension {dim} exceeds limit {MAX_DIM}"),
        ));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (r, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{r}]");
        let entries = row.as_array().ok_or_else(|| {
            format_err(
                &row_path,
                format!("expected row array, found {}", kind(row)),
            )
        })?;
        if entries.len() != dim {
            return Err(format_err(
                &row_path,
                format!("row has {} entries, matrix needs {dim}", entries.len()),
            ));
        }
        for (c, entry) in entries.iter().enumerate() {
            data.push(parse_entry(entry, &format!("{row_path}[{c}]"))?);
        }
    }
    ComplexMatrix::from_vec(dim, data).map_err(|e| format_err(path, e.to_string()))
}

/// Parses and validates a `{"name": ..., "kraus": [...]}` channel document.
pub fn parse_channel_json(text: &str) -> Result<KrausChannel> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc.as_object().ok_or_else(|| {
        format_err(
            "$",
            format!("expected channel object, found {}", kind(&doc)),
        )
    })?;
    let name = match obj.get("name") {
        None => "channel",
        Some(Value::String(s)) => s.as_str(),
        Some(other) => {
            return Err(format_err(
                "name",
                format!("expected a string, found {}", kind(other)),
            ))
        }
    };
    let kraus = obj
        .get("kraus")
        .ok_or_else(|| format_err("kraus", "missing field"))?;
    let list = kraus.as_array().ok_or_else(|| {
        format_err(
            "kraus",
            format!("expected array of matrices, found {}", kind(kraus)),
        )
    })?;
    if list.is_empty() {
        return Err(format_err("kraus", "channel has no Kraus operators"));
    }
    let ops = list
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(m, &format!("kraus[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(name, ops)
}

/// Parses a bare matrix or `{"rho": matrix}` and validates it as a state.
pub fn parse_density_json(text: &str) -> Result<DensityMatrix> {
    let doc: Value = serde_json::from_str(text)?;
    let (value, path) = match &doc {
        Value::Object(obj) => (
            obj.get("rho")
                .ok_or_else(|| format_err("rho", "missing field"))?,
            "rho",
        ),
        other => (other, "$"),
    };
    DensityMatrix::new(parse_matrix(value, path)?)
}

/// Parses `"x,y,z"` (whitespace allowed) into a Bloch vector.
pub fn parse_bloch_vector(text: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format_err(
            "bloch",
            format!(
                "expected three comma-separated components, found {}",
                parts.len()
            ),
        ));
    }
    let mut out = [0.0; 3];
    for (i, part) in parts.iter().enumerate() {
        out[i] = part
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| {
                format_err(
                    &format!("bloch[{i}]"),
                    format!("not a finite number: {part:?}"),
                )
            })?;
    }
    Ok(out)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        m.rows()
            .map(|row| Value::Array(row.iter().map(|z| json!([z.re, z.im])).collect()))
            .collect(),
    )
}

pub fn channel_to_json(ch: &KrausChannel) -> Value {
    json!({
        "name": ch.name(),
        "kraus": ch.ops().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn density_to_json(rho: &DensityMatrix) -> Value {
    json!({ "rho": matrix_to_json(rho.matrix()) })
}
