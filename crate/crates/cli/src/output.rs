use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// A result ready to print: a headline value for text output plus named
/// fields, or a table.
pub enum Report {
    Record { headline: String, fields: BTreeMap<String, Value> },
    Table { columns: Vec<String>, rows: Vec<Vec<String>>, json: Value },
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            // serde_json's map keeps keys sorted
            (Report::Record { fields, .. }, Format::Json) => {
                serde_json::to_string(&fields).expect("json values serialize")
            }
            (Report::Table { json, .. }, Format::Json) => json.to_string(),
            (Report::Record { headline, fields }, Format::Text) => {
                let mut out = headline.clone();
                if fields.len() > 1 {
                    for (k, v) in fields {
                        out.push_str(&format!("\n{k}: {}", plain(v)));
                    }
                }
                out
            }
            (Report::Record { fields, .. }, Format::Csv) => {
                let mut out = String::from("key,value");
                for (k, v) in fields {
                    out.push_str(&format!("\n{},{}", csv_cell(k), csv_cell(&plain(v))));
                }
                out
            }
            (Report::Table { rows, .. }, Format::Text) => {
                rows.iter().map(|r| r.join("  ")).collect::<Vec<_>>().join("\n")
            }
            (Report::Table { columns, rows, .. }, Format::Csv) => {
                let mut lines = vec![columns.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",")];
                lines.extend(rows.iter().map(|r| r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",")));
                lines.join("\n")
            }
        }
    }

    pub fn print(&self, format: Format) -> io::Result<()> {
        let mut out = io::stdout().lock();
        writeln!(out, "{}", self.render(format))
    }
}
