//! Curve files: Fourier JSON and uniformly sampled CSV.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, JordanCurve};
use crate::scalar::{Real, C};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed curve JSON")]
    Json(#[from] serde_json::Error),
    #[error("malformed sample CSV")]
    Csv(#[from] csv::Error),
    #[error("sample row {row}: {msg}")]
    Row { row: usize, msg: String },
    #[error("unsupported curve type {0:?}")]
    Type(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Serialize, Deserialize)]
struct FourierFile {
    #[serde(rename = "type")]
    kind: String,
    #[serde(rename = "K")]
    order: usize,
    coeffs: Vec<[f64; 2]>,
}

/// `{"type":"fourier","K":K,"coeffs":[[re,im],...]}` with `k = −K..K`.
pub fn curve_to_json<T: Real>(curve: &JordanCurve<T>) -> String {
    let file = FourierFile {
        kind: "fourier".into(),
        order: curve.order(),
        coeffs: curve
            .coeffs()
            .iter()
            .map(|c| [c.re.as_f64(), c.im.as_f64()])
            .collect(),
    };
    serde_json::to_string(&file).expect("curve serializes")
}

pub fn curve_from_json<T: Real>(text: &str) -> Result<JordanCurve<T>, IoError> {
    let file: FourierFile = serde_json::from_str(text)?;
    if file.kind != "fourier" {
        return Err(IoError::Type(file.kind));
    }
    let coeffs = file
        .coeffs
        .iter()
        .map(|[re, im]| C::new(T::lit(*re), T::lit(*im)))
        .collect();
    Ok(JordanCurve::new(file.order, coeffs)?)
}

/// Two columns `re,im` per row; a non-numeric first row is taken as a header.
pub fn samples_from_csv<T: Real>(text: &str) -> Result<Vec<C<T>>, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (row, rec) in reader.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(IoError::Row {
                row,
                msg: format!("expected 2 columns, got {}", rec.len()),
            });
        }
        let parsed: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => out.push(C::new(T::lit(v[0]), T::lit(v[1]))),
            Err(_) if row == 0 => continue,
            Err(e) => {
                return Err(IoError::Row {
                    row,
                    msg: e.to_string(),
                })
            }
        }
    }
    Ok(out)
}

/// Fit of order `order` to CSV samples; fails above `max_residual`.
pub fn curve_from_csv<T: Real>(
    text: &str,
    order: usize,
    max_residual: T,
) -> Result<(JordanCurve<T>, T), IoError> {
    let pts = samples_from_csv(text)?;
    Ok(JordanCurve::from_samples(&pts, order, Some(max_residual))?)
}
