//! Matrix text format (`"1,2;3,4"`) and JSON array-of-arrays encoding.

use std::fmt;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::Value;

use super::Mat;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

impl Mat {
    /// Parses rows separated by `;` and entries by `,`. The empty string is the 0×0 matrix.
    pub fn parse_text(field: Field, text: &str) -> Result<Mat> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Mat::zeros(field, 0, 0));
        }
        let rows = text
            .split(';')
            .map(|row| row.split(',').map(|e| field.parse_scalar(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(field, rows)
    }

    /// Accepts an array of arrays whose entries are integers or scalar strings.
    pub fn from_json(field: Field, value: &Value) -> Result<Mat> {
        let rows = value.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(|e| json_scalar(field, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(field, rows)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("matrix serialization is infallible")
    }
}

pub(crate) fn json_scalar(field: Field, e: &Value) -> Result<Scalar> {
    match e {
        Value::Number(n) => n
            .as_i64()
            .map(|v| field.from_int(v))
            .ok_or_else(|| Error::Parse(format!("bad matrix entry {n}"))),
        Value::String(s) => field.parse_scalar(s),
        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
    }
}

pub(crate) fn scalar_json(s: Scalar) -> Value {
    if s.field().is_extension() {
        Value::String(s.to_string())
    } else {
        Value::from(s.coeffs().0)
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows()))?;
        for i in 0..self.rows() {
            let row: Vec<Value> = self.row(i).into_iter().map(scalar_json).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}
