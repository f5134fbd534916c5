//! Deterministic output encoding: a small JSON writer with a fixed float
//! format (17 significant digits) and fixed field order, plus the CSV
//! convention of a header row and a trailing `# config: …` metadata line.

use std::io::Write;
use std::path::PathBuf;

use crate::CliError;

/// JSON value with deterministic serialization.
#[derive(Debug, Clone)]
pub enum Json {
    Bool(bool),
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
    /// Pre-serialized JSON, embedded verbatim (used for symbol objects that
    /// follow the symbol schema codec).
    Raw(String),
}

impl Json {
    pub fn obj(fields: Vec<(&str, Json)>) -> Json {
        Json::Obj(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }
}

/// 17 significant digits; byte-stable across runs and thread counts.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "\"nan\"".to_string()
    } else if x > 0.0 {
        "\"inf\"".to_string()
    } else {
        "\"-inf\"".to_string()
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

pub fn write_json(j: &Json, out: &mut String) {
    match j {
        Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Json::Int(i) => out.push_str(&i.to_string()),
        Json::UInt(u) => out.push_str(&u.to_string()),
        Json::Float(x) => out.push_str(&fmt_float(*x)),
        Json::Str(s) => {
            out.push('"');
            out.push_str(&escape(s));
            out.push('"');
        }
        Json::Arr(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json(item, out);
            }
            out.push(']');
        }
        Json::Obj(fields) => {
            out.push('{');
            for (i, (k, v)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('"');
                out.push_str(&escape(k));
                out.push_str("\":");
                write_json(v, out);
            }
            out.push('}');
        }
        Json::Raw(s) => out.push_str(s),
    }
}

pub fn json_line(j: &Json) -> String {
    let mut s = String::new();
    write_json(j, &mut s);
    s.push('\n');
    s
}

/// Quotes a CSV field when needed (commas, quotes, leading '#').
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.starts_with('#') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders a CSV document: header, rows, trailing canonical-config comment.
pub fn csv_document(header: &[&str], rows: &[Vec<String>], config: &Json) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let encoded: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&encoded.join(","));
        out.push('\n');
    }
    let mut cfg = String::new();
    write_json(config, &mut cfg);
    out.push_str("# config: ");
    out.push_str(&cfg);
    out.push('\n');
    out
}

/// Writes to the output file, or stdout when none is given.
pub fn deliver(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Internal(format!("stdout write failed: {e}")))
        }
    }
}
