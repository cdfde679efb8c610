//! Deterministic report emission: JSON with sorted keys, exact rationals as
//! `"p/q"` strings, complex numbers as `{re, im}` decimal strings; CSV for
//! multiplier sweeps.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use rug::Rational;
use serde_json::{json, Value};

use crate::algebra::Poly;
use crate::num::FormatDigits;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// `"p/q"`, including `"0/1"` and `"n/1"` for integers.
pub fn rational_str(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Ascending coefficient list of `p` as `"p/q"` strings; `["0/1"]` for zero.
pub fn poly_value(p: &Poly) -> Value {
    if p.is_zero() {
        return json!(["0/1"]);
    }
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(rational_str(c)))
            .collect(),
    )
}

pub fn complex_value<T: FormatDigits>(z: &T, digits: usize) -> Value {
    let (re, im) = z.format_parts(digits);
    json!({ "re": re, "im": im })
}

/// Pretty JSON with a trailing newline. Object keys come out sorted because
/// `serde_json::Map` is ordered by key.
pub fn to_json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s.into_bytes()
}

/// One point of a multiplier sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub e: Complex64,
    pub b: Complex64,
    pub route: String,
}

pub const SWEEP_HEADER: &str = "E_re,E_im,B_re,B_im,route";

pub fn sweep_csv(rows: &[SweepRow]) -> Vec<u8> {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{:.17e},{:.17e},{:.17e},{:.17e},{}",
            r.e.re, r.e.im, r.b.re, r.b.im, r.route
        );
    }
    s.into_bytes()
}

/// Emits `v` in the requested format; CSV is only defined for sweeps.
pub fn emit(v: &Value, rows: Option<&[SweepRow]>, format: Format) -> Result<Vec<u8>> {
    match (format, rows) {
        (Format::Json, _) => Ok(to_json_bytes(v)),
        (Format::Csv, Some(rows)) => Ok(sweep_csv(rows)),
        (Format::Csv, None) => Err(Error::UnsupportedFormat(
            "csv (only multiplier sweeps have a CSV form)".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_always_have_denominators() {
        assert_eq!(rational_str(&Rational::new()), "0/1");
        assert_eq!(rational_str(&Rational::from(1)), "1/1");
        assert_eq!(rational_str(&Rational::from((-9, 4))), "-9/4");
        assert_eq!(poly_value(&Poly::x()), json!(["0/1", "1/1"]));
    }

    #[test]
    fn keys_sorted() {
        let v = json!({"b": 1, "a": 2});
        assert_eq!(
            String::from_utf8(to_json_bytes(&v)).unwrap(),
            "{\n  \"a\": 2,\n  \"b\": 1\n}\n"
        );
    }

    #[test]
    fn csv_header_and_format_errors() {
        let rows = [SweepRow {
            e: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 1.0),
            route: "ode".into(),
        }];
        let out = String::from_utf8(emit(&Value::Null, Some(&rows), Format::Csv).unwrap()).unwrap();
        assert!(out.starts_with("E_re,E_im,B_re,B_im,route\n"));
        assert!(matches!(
            "xml".parse::<Format>(),
            Err(Error::UnsupportedFormat(_))
        ));
        assert!(emit(&Value::Null, None, Format::Csv).is_err());
    }
}
