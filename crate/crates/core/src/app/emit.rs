use super::audit::FormulaRecord;
use super::sweep::SweepRow;
use crate::error::{QcorrError, Result};

pub const CSV_HEADER: [&str; 5] = ["variable", "series", "negativity", "lqu", "lqfi"];

/// Twelve significant digits in scientific notation.
pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn emit_csv(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(QcorrError::InvalidSweep("no rows to emit".into()));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let csv_err = |e: csv::Error| QcorrError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            format_value(r.variable),
            r.series.clone(),
            format_value(r.negativity),
            format_value(r.lqu),
            format_value(r.lqfi),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| QcorrError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| QcorrError::Io(e.to_string()))
}

/// Pretty JSON array, keys in declaration order, trailing newline.
/// Non-finite deviations are written as `null`.
pub fn emit_json(report: &[FormulaRecord]) -> Result<String> {
    if report.is_empty() {
        return Err(QcorrError::InvalidParams("empty report".into()));
    }
    let mut s = serde_json::to_string_pretty(report).map_err(|e| QcorrError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
