//! Output rendering: markdown tables, RFC-style CSV, and JSON with both
//! decimal (at the configured digit count) and exact hexadecimal fields.

use holder_core::norms::BoundReport;
use holder_core::numerics::Real;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[value(name = "markdown-table", alias = "markdown", alias = "md")]
    Markdown,
    Csv,
    Json,
}

pub fn fmt_real(x: &Real, digits: u32) -> String {
    x.to_decimal(digits as usize)
}

pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn markdown_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str("| ");
    out.push_str(&headers.join(" | "));
    out.push_str(" |\n|");
    for _ in headers {
        out.push_str("---|");
    }
    out.push('\n');
    for row in rows {
        out.push_str("| ");
        out.push_str(&row.join(" | "));
        out.push_str(" |\n");
    }
    out
}

pub fn csv_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(
        &headers
            .iter()
            .map(|h| csv_field(h))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    for row in rows {
        out.push_str(
            &row.iter()
                .map(|f| csv_field(f))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
    }
    out
}

/// A bound report as JSON: decimal strings at `digits` plus exact hex.
pub fn report_json(label: &str, report: &BoundReport, digits: u32) -> Value {
    json!({
        "check": label,
        "lhs": fmt_real(&report.lhs, digits),
        "lhs_hex": report.lhs.to_hex_exact(),
        "rhs": fmt_real(&report.rhs, digits),
        "rhs_hex": report.rhs.to_hex_exact(),
        "margin": fmt_real(&report.margin, digits),
        "tolerance": fmt_real(&report.tolerance, 3),
        "holds": report.holds,
        "precision_bits": report.prec,
    })
}

pub fn report_row(label: &str, report: &BoundReport, digits: u32) -> Vec<String> {
    vec![
        label.to_string(),
        fmt_real(&report.lhs, digits),
        fmt_real(&report.rhs, digits),
        fmt_real(&report.margin, digits),
        report.holds.to_string(),
    ]
}

pub const REPORT_HEADERS: [&str; 5] = ["check", "lhs", "rhs", "margin", "holds"];

/// Render a homogeneous list of labelled reports in the chosen format.
pub fn print_reports(format: OutputFormat, digits: u32, items: &[(String, BoundReport)]) {
    match format {
        OutputFormat::Markdown => {
            let rows: Vec<Vec<String>> = items
                .iter()
                .map(|(l, r)| report_row(l, r, digits))
                .collect();
            print!("{}", markdown_table(&REPORT_HEADERS, &rows));
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = items
                .iter()
                .map(|(l, r)| report_row(l, r, digits))
                .collect();
            print!("{}", csv_table(&REPORT_HEADERS, &rows));
        }
        OutputFormat::Json => {
            let reports: Vec<Value> = items
                .iter()
                .map(|(l, r)| report_json(l, r, digits))
                .collect();
            let doc = json!({ "reports": reports });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
    }
}
