//! Sweep rows and their CSV / JSON-lines serializations.

use std::io::Write;

use serde::Serialize;

use crate::error::LabError;

pub const CSV_HEADER: [&str; 9] = [
    "n", "r", "sigma", "quantity", "value", "lower", "upper", "trunc", "residual",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    BernsteinBergman,
    BernsteinHardy,
    InterpExact,
    InterpUpper,
    InterpLowerEq9,
    Ratio,
    Audit,
}

impl Quantity {
    pub fn tag(self) -> &'static str {
        match self {
            Quantity::BernsteinBergman => "bernstein-bergman",
            Quantity::BernsteinHardy => "bernstein-hardy",
            Quantity::InterpExact => "interp-exact",
            Quantity::InterpUpper => "interp-upper",
            Quantity::InterpLowerEq9 => "interp-lower-eq9",
            Quantity::Ratio => "ratio",
            Quantity::Audit => "audit",
        }
    }

    /// Whether `lower <= value <= upper` is asserted for this quantity.
    /// Bernstein rows carry bounds on the supremum over all configurations,
    /// so a single configuration may fall below `lower`.
    pub fn bracket_checked(self) -> bool {
        matches!(
            self,
            Quantity::InterpExact | Quantity::InterpUpper | Quantity::InterpLowerEq9 | Quantity::Ratio
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub r: f64,
    pub sigma: String,
    pub quantity: Quantity,
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub trunc: usize,
    pub residual: f64,
}

impl SweepRow {
    /// `lower - slack <= value <= upper + slack` for the bounds present.
    pub fn within_bounds(&self, slack: f64) -> bool {
        self.lower.is_none_or(|l| l - slack <= self.value)
            && self.upper.is_none_or(|u| self.value <= u + slack)
    }
}

/// 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

pub fn write_rows<W: Write>(out: W, rows: &[SweepRow], format: OutputFormat) -> Result<(), LabError> {
    match format {
        OutputFormat::Csv => write_csv(out, rows),
        OutputFormat::Json => write_json_lines(out, rows),
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<(), LabError> {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record([
            row.n.to_string(),
            format_number(row.r),
            row.sigma.clone(),
            row.quantity.tag().to_string(),
            format_number(row.value),
            format_optional(row.lower),
            format_optional(row.upper),
            row.trunc.to_string(),
            format_number(row.residual),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json_lines<W: Write>(mut out: W, rows: &[SweepRow]) -> Result<(), LabError> {
    for row in rows {
        serde_json::to_writer(&mut out, row)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> SweepRow {
        SweepRow {
            n: 2,
            r: 0.5,
            sigma: "0.5,0;0.5,0".into(),
            quantity: Quantity::BernsteinBergman,
            value: 1.4946083231308933,
            lower: Some(1.0),
            upper: None,
            trunc: 65,
            residual: 0.0,
        }
    }

    #[test]
    fn csv_quoting_and_digits() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "n,r,sigma,quantity,value,lower,upper,trunc,residual");
        assert_eq!(
            lines.next().unwrap(),
            "2,5.0000000000000000e-1,\"0.5,0;0.5,0\",bernstein-bergman,1.4946083231308933e0,1.0000000000000000e0,,65,0.0000000000000000e0"
        );
    }

    #[test]
    fn json_mirrors_field_names() {
        let mut buf = Vec::new();
        write_json_lines(&mut buf, &[row()]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        for key in CSV_HEADER {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["quantity"], "bernstein-bergman");
        assert!(v["upper"].is_null());
    }
}
