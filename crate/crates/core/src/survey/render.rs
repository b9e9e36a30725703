use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{FamilySelector, SurveyRow, SurveyTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected markdown, csv or json)")),
        }
    }
}

pub const CSV_HEADER: &str = "order,count,shapes,success,trace,supersingular";

fn compact_shapes(row: &SurveyRow) -> String {
    row.shapes
        .iter()
        .map(|s| s.compact())
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct JsonRow {
    order: u64,
    count: u64,
    shapes: Vec<String>,
    success: bool,
    trace: i64,
    supersingular: bool,
}

fn family_heading(family: FamilySelector) -> &'static str {
    match family {
        FamilySelector::J0 => "j = 0",
        FamilySelector::J1728 => "j = 1728",
        FamilySelector::All => "all curves",
    }
}

/// Renders a survey; output depends only on the table contents.
pub fn render(table: &SurveyTable, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Markdown => {
            let _ = writeln!(
                out,
                "### {}, r = {}, p = {}\n",
                family_heading(table.family),
                table.r,
                table.p
            );
            out.push_str("| Order | Count | Structures | Success |\n");
            out.push_str("|---|---|---|---|\n");
            for row in &table.rows {
                let shapes = row
                    .shapes
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ");
                let success = if row.success { "Yes" } else { "No" };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    row.order, row.curve_count, shapes, success
                );
            }
        }
        Format::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in &table.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    row.order,
                    row.curve_count,
                    compact_shapes(row),
                    row.success,
                    row.trace,
                    row.supersingular
                );
            }
        }
        Format::Json => {
            let rows: Vec<JsonRow> = table
                .rows
                .iter()
                .map(|r| JsonRow {
                    order: r.order,
                    count: r.curve_count,
                    shapes: r.shapes.iter().map(|s| s.compact()).collect(),
                    success: r.success,
                    trace: r.trace,
                    supersingular: r.supersingular,
                })
                .collect();
            out = serde_json::to_string_pretty(&rows).expect("plain data serializes");
            out.push('\n');
        }
    }
    out
}
