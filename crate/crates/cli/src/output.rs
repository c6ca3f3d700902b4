//! JSON and CSV rendering. Exact values are never rounded: rationals are
//! emitted as `num/den` strings, and decimal fields appear only when the
//! user asks for them, alongside the exact forms.

use serde_json::{Map, Value};

use seqlab_core::certificate::{Certificate, CheckMode};
use seqlab_core::scalar::to_decimal_string;
use seqlab_core::Bounds;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown output format {other:?} (json or csv)")),
        }
    }
}

/// Rendering options threaded through every command.
#[derive(Clone, Copy, Debug)]
pub struct Render {
    pub decimals: Option<usize>,
}

impl Render {
    /// Enclosure as a JSON object: `{"exact": ...}` or `{"lower", "upper"}`,
    /// plus decimal fields when requested.
    pub fn bounds(&self, b: &Bounds) -> Value {
        let mut map = Map::new();
        match b {
            Bounds::Exact(v) => {
                map.insert("exact".into(), Value::String(v.to_string()));
                if let Some(d) = self.decimals {
                    map.insert(
                        "exact_decimal".into(),
                        Value::String(to_decimal_string(v, d)),
                    );
                }
            }
            Bounds::Bracket { lo, hi } => {
                map.insert("lower".into(), Value::String(lo.to_string()));
                map.insert("upper".into(), Value::String(hi.to_string()));
                if let Some(d) = self.decimals {
                    map.insert(
                        "lower_decimal".into(),
                        Value::String(to_decimal_string(lo, d)),
                    );
                    map.insert(
                        "upper_decimal".into(),
                        Value::String(to_decimal_string(hi, d)),
                    );
                }
            }
        }
        Value::Object(map)
    }

    pub fn certificate(&self, c: &Certificate) -> Value {
        let mut map = Map::new();
        map.insert("identity".into(), Value::String(c.identity.clone()));
        map.insert("mode".into(), Value::String(mode_label(c.mode)));
        map.insert("passed".into(), Value::Bool(c.passed));
        map.insert("residual".into(), self.bounds(&c.residual));
        if let Some(k) = c.truncation {
            map.insert("truncation".into(), Value::Number(k.into()));
        }
        Value::Object(map)
    }
}

pub fn mode_label(mode: CheckMode) -> String {
    match mode {
        CheckMode::Exact => "exact".into(),
        CheckMode::Bracket { prec_bits } => format!("bracket/{prec_bits}"),
    }
}

pub fn print_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("serializable"));
}

/// Minimal CSV emission; every cell this tool produces is quote-free.
pub fn print_csv(header: &[&str], rows: &[Vec<String>]) {
    emit(&header.join(","));
    for row in rows {
        emit(&row.join(","));
    }
}

/// Writes one line, exiting quietly when the consumer closed the pipe.
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}
