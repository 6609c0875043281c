//! Report rows and their CSV/JSON encodings.
//!
//! Output is deterministic: values are rounded to 12 significant digits
//! before encoding, CSV fields are quoted only when they contain a comma or
//! quote, and row order is fixed by the caller.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub state_label: String,
    pub measure: String,
    pub split: String,
    pub value: f64,
    pub exact_expr: Option<String>,
    pub paper_value: Option<f64>,
}

/// Render with 12 significant digits, positional where readable.
pub fn fmt_sig12(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    if (-4..12).contains(&magnitude) {
        let decimals = (11 - magnitude).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.11e}")
    }
}

fn round_sig12(value: f64) -> f64 {
    fmt_sig12(value).parse().unwrap_or(value)
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("state_label,measure,split,value,exact_expr,paper_value\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&row.state_label),
            csv_field(&row.measure),
            csv_field(&row.split),
            fmt_sig12(row.value),
            csv_field(row.exact_expr.as_deref().unwrap_or("")),
            row.paper_value.map(fmt_sig12).unwrap_or_default(),
        ));
    }
    out
}

pub fn to_json(rows: &[ReportRow]) -> String {
    let rounded: Vec<ReportRow> = rows
        .iter()
        .map(|row| ReportRow {
            value: round_sig12(row.value),
            paper_value: row.paper_value.map(round_sig12),
            ..row.clone()
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&rounded).expect("rows serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(1.0), "1.00000000000");
        assert_eq!(fmt_sig12(0.564718601259), "0.564718601259");
        assert_eq!(fmt_sig12(-0.5), "-0.500000000000");
        assert!(fmt_sig12(1.5e-9).contains('e'));
    }

    #[test]
    fn csv_quotes_commas() {
        let rows = vec![ReportRow {
            state_label: "rho1".into(),
            measure: "gm".into(),
            split: String::new(),
            value: 1.0,
            exact_expr: Some("max(a,b)".into()),
            paper_value: None,
        }];
        let csv = to_csv(&rows);
        assert!(csv.contains("\"max(a,b)\""));
        assert!(csv.starts_with("state_label,measure,split,value,exact_expr,paper_value\n"));
        assert!(csv.ends_with(",\n"));
    }

    #[test]
    fn json_is_parseable_array() {
        let rows = vec![ReportRow {
            state_label: "psi1".into(),
            measure: "coherence".into(),
            split: String::new(),
            value: 0.9354143466934853,
            exact_expr: None,
            paper_value: Some(0.95),
        }];
        let parsed: serde_json::Value = serde_json::from_str(&to_json(&rows)).unwrap();
        assert_eq!(parsed[0]["measure"], "coherence");
        assert!(parsed[0]["exact_expr"].is_null());
    }
}
