//! Machine-readable result records for JSON and CSV output. Numeric values
//! are carried as decimal strings so arbitrary-precision results survive the
//! round trip.

use serde::{Deserialize, Serialize};

use crate::hp::Complex;
use crate::partitions::CertifiedCount;

/// One result row, shared by the JSON and CSV emitters.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportRecord {
    pub cmd: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub analytic_re: String,
    pub analytic_im: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounded: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    pub c_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    pub ms: u128,
}

/// Render a Float as a decimal string with enough digits for the working
/// precision, so parsing it back loses nothing.
pub fn decimal(value: &rug::Float) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let digits = (value.prec() as f64 * 0.302).ceil() as usize + 2;
    value.to_string_radix(10, Some(digits))
}

impl ReportRecord {
    pub fn for_count(cmd: &str, r: Option<u32>, n: u64, count: &CertifiedCount, ms: u128) -> Self {
        ReportRecord {
            cmd: cmd.to_string(),
            r,
            n: Some(n),
            analytic_re: decimal(&count.analytic.re),
            analytic_im: decimal(&count.analytic.im),
            rounded: Some(count.rounded.to_string()),
            margin: Some(count.margin),
            c_max: count.c_max,
            certified: count.certified,
            ms,
        }
    }

    pub fn for_value(cmd: &str, value: &Complex, c_max: u64, ms: u128) -> Self {
        ReportRecord {
            cmd: cmd.to_string(),
            r: None,
            n: None,
            analytic_re: decimal(&value.re),
            analytic_im: decimal(&value.im),
            rounded: None,
            margin: None,
            c_max,
            certified: None,
            ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }

    pub fn csv_header() -> &'static str {
        "cmd,r,n,analytic_re,analytic_im,rounded,margin,c_max,certified,ms"
    }

    pub fn to_csv_row(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.cmd,
            opt(&self.r),
            opt(&self.n),
            self.analytic_re,
            self.analytic_im,
            opt(&self.rounded),
            opt(&self.margin),
            self.c_max,
            opt(&self.certified),
            self.ms
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn json_round_trip() {
        let record = ReportRecord {
            cmd: "partitions".into(),
            r: Some(3),
            n: Some(10),
            analytic_re: "75.000000000001".into(),
            analytic_im: "0.0".into(),
            rounded: Some("75".into()),
            margin: Some(1e-12),
            c_max: 64,
            certified: Some(true),
            ms: 12,
        };
        let json = record.to_json();
        assert!(json.contains("\"cmd\":\"partitions\""));
        assert!(json.contains("\"c_max\":64"));
        let back: ReportRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
    }

    #[test]
    fn absent_fields_are_omitted() {
        let value = crate::hp::Complex::with_val(64, 1.5, 0.0);
        let record = ReportRecord::for_value("kloosterman", &value, 7, 3);
        let json = record.to_json();
        assert!(!json.contains("\"rounded\""));
        assert!(!json.contains("\"certified\""));
        assert!(json.contains("\"c_max\":7"));
    }

    #[test]
    fn decimal_is_plain() {
        let v = Float::with_val(64, 190569292u64);
        let s = decimal(&v);
        assert!(s.starts_with("1.90569292") || s.starts_with("190569292"), "{s}");
        assert_eq!(decimal(&Float::with_val(64, 0)), "0");
    }

    #[test]
    fn csv_row_shape() {
        let value = crate::hp::Complex::with_val(64, 2.0, -1.0);
        let record = ReportRecord::for_value("coeff", &value, 11, 0);
        let row = record.to_csv_row();
        assert_eq!(row.split(',').count(), ReportRecord::csv_header().split(',').count());
    }
}
