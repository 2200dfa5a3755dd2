//! The row schema shared by every tabular command, and its CSV/JSON writers.
//!
//! CSV columns are `x, y, re, im, err_est, path`, floats printed with 17
//! significant digits, LF line endings. JSON tables are arrays of the same
//! rows; non-finite floats appear as `null`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::io::Write;

pub const COLUMNS: [&str; 6] = ["x", "y", "re", "im", "err_est", "path"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_nan")]
    pub x: f64,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_nan")]
    pub y: f64,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_nan")]
    pub re: f64,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_nan")]
    pub im: f64,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_nan")]
    pub err_est: f64,
    pub path: String,
}

fn finite_or_null<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

fn null_as_nan<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

/// `{:.16e}`: 17 significant digits, enough to recover every `f64`.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record([
            fmt_float(r.x),
            fmt_float(r.y),
            fmt_float(r.re),
            fmt_float(r.im),
            fmt_float(r.err_est),
            r.path.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> csv::Result<Vec<Row>> {
    csv::Reader::from_reader(input).deserialize().collect()
}
