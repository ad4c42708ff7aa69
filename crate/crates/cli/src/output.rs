//! Output records and their text rendering.
//!
//! A record is the unit of output: one per query. `--output records` writes
//! each as a single JSON line; `--output text` renders the same value as an
//! indented block.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Ok,
    DomainError,
    VerificationFailure,
    UsageError,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::DomainError => 1,
            Outcome::UsageError => 2,
            Outcome::VerificationFailure => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub command: &'static str,
    pub input: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip)]
    pub outcome: Outcome,
}

impl Record {
    pub fn ok(command: &'static str, input: Value, result: impl Serialize) -> Self {
        Record {
            command,
            input,
            result: Some(serde_json::to_value(result).expect("result serializes")),
            status: Status::Ok,
            message: None,
            outcome: Outcome::Ok,
        }
    }

    pub fn error(command: &'static str, input: Value, outcome: Outcome, message: impl Into<String>) -> Self {
        Record {
            command,
            input,
            result: None,
            status: Status::Error,
            message: Some(message.into()),
            outcome,
        }
    }

    pub fn with_result(mut self, result: impl Serialize) -> Self {
        self.result = Some(serde_json::to_value(result).expect("result serializes"));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
}

pub struct Emitter<W: Write> {
    out: W,
    format: Format,
    worst: Outcome,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Emitter {
            out,
            format,
            worst: Outcome::Ok,
        }
    }

    pub fn emit(&mut self, record: &Record) -> io::Result<()> {
        self.worst = self.worst.max(record.outcome);
        match self.format {
            Format::Records => {
                serde_json::to_writer(&mut self.out, record)?;
                writeln!(self.out)?;
            }
            Format::Text => render_text(&mut self.out, record)?,
        }
        self.out.flush()
    }

    pub fn exit_code(&self) -> u8 {
        self.worst.exit_code()
    }
}

fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_fields(out: &mut impl Write, value: &Value, indent: usize) -> io::Result<()> {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        writeln!(out, "{pad}{key}:")?;
                        for item in items {
                            writeln!(out, "{pad}  - {}", compact(item))?;
                        }
                    }
                    Value::Object(_) => {
                        writeln!(out, "{pad}{key}:")?;
                        render_fields(out, v, indent + 2)?;
                    }
                    _ => writeln!(out, "{pad}{key}: {}", compact(v))?,
                }
            }
            Ok(())
        }
        other => writeln!(out, "{pad}{}", compact(other)),
    }
}

fn render_text(out: &mut impl Write, record: &Record) -> io::Result<()> {
    let input: Vec<String> = match &record.input {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect(),
        other => vec![compact(other)],
    };
    let status = match record.status {
        Status::Ok => "ok",
        Status::Error => "error",
    };
    writeln!(out, "{} {}: {status}", record.command, input.join(" "))?;
    if let Some(message) = &record.message {
        writeln!(out, "  message: {message}")?;
    }
    if let Some(result) = &record.result {
        render_fields(out, result, 2)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_carries_every_field() {
        let record = Record::ok(
            "decompose",
            json!({"n": 3}),
            json!({"roots": [1, 1, 1], "case": "8m+3/1"}),
        );
        let mut buf = Vec::new();
        render_text(&mut buf, &record).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "decompose n=3: ok\n  case: 8m+3/1\n  roots: [1,1,1]\n");
    }

    #[test]
    fn worst_outcome_wins() {
        let mut e = Emitter::new(Vec::new(), Format::Records);
        e.emit(&Record::ok("x", json!({}), 1)).unwrap();
        e.emit(&Record::error("x", json!({}), Outcome::DomainError, "bad"))
            .unwrap();
        assert_eq!(e.exit_code(), 1);
        e.emit(&Record::error("x", json!({}), Outcome::UsageError, "bad"))
            .unwrap();
        assert_eq!(e.exit_code(), 2);
        let lines = String::from_utf8(e.out).unwrap();
        assert_eq!(lines.lines().count(), 3);
        for line in lines.lines() {
            serde_json::from_str::<Value>(line).unwrap();
        }
    }
}
