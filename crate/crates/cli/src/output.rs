//! Output envelope and its JSON, CSV and table renderings.

use std::io::Write;

use brieskorn_core::{Error, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::commands::Request;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Every subcommand prints exactly one envelope.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub warnings: Vec<String>,
}

impl Envelope {
    pub fn new(request: &Request, result: Value, warnings: Vec<String>) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: request.command,
            input: request.input.clone(),
            result,
            warnings,
        }
    }
}

/// Header and rows; columns are fixed per subcommand.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(Value::is_number) => {
            a.iter().map(Value::to_string).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

/// Record-oriented payloads list their records; the others list
/// `field,value` pairs in key order.
pub fn table(env: &Envelope) -> Table {
    let r = &env.result;
    let rows_of = |items: &Value, keys: &[&str]| -> Vec<Vec<String>> {
        items
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|x| keys.iter().map(|k| cell(&x[*k])).collect())
                    .collect()
            })
            .unwrap_or_default()
    };
    match env.command {
        "enumerate" => Table {
            header: vec!["index", "exponents"],
            rows: r["tuples"]
                .as_array()
                .map(|a| {
                    a.iter()
                        .enumerate()
                        .map(|(i, t)| vec![(i + 1).to_string(), cell(t)])
                        .collect()
                })
                .unwrap_or_default(),
        },
        "reproduce" => Table {
            header: vec!["label", "computed", "expected", "matches"],
            rows: rows_of(&r["cells"], &["label", "computed", "expected", "matches"]),
        },
        "sequence" => Table {
            header: vec!["k", "value"],
            rows: rows_of(&r["values"], &["k", "value"]),
        },
        _ => Table {
            header: vec!["field", "value"],
            rows: r
                .as_object()
                .map(|o| o.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect())
                .unwrap_or_default(),
        },
    }
}

fn render_csv(t: &Table) -> Result<Vec<u8>> {
    let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.header).map_err(io)?;
    for row in &t.rows {
        w.write_record(row).map_err(io)?;
    }
    w.into_inner()
        .map_err(|e| Error::Internal(format!("csv: {e}")))
}

fn render_table(t: &Table) -> String {
    let mut width: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(t.header.clone());
    out += &line(
        width
            .iter()
            .map(|&w| "-".repeat(w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for row in &t.rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn render(env: &Envelope, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_vec_pretty(env)
                .map_err(|e| Error::Internal(format!("json: {e}")))?;
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => render_csv(&table(env)),
        Format::Table => {
            let mut s = render_table(&table(env));
            for w in &env.warnings {
                s += &format!("warning: {w}\n");
            }
            Ok(s.into_bytes())
        }
    }
}

pub fn write(env: &Envelope, format: Format) -> Result<()> {
    let bytes = render(env, format)?;
    let mut out = std::io::stdout().lock();
    out.write_all(&bytes)
        .and_then(|()| out.flush())
        .map_err(|e| Error::Internal(format!("stdout: {e}")))?;
    if format == Format::Csv {
        for w in &env.warnings {
            eprintln!("warning: {w}");
        }
    }
    Ok(())
}
