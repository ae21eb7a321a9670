//! Report serialization. Every float is printed with 17 significant digits,
//! enough to reproduce the bits of an f64.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// `v` with 17 significant digits: plain decimal for exponents in [-5, 17),
/// scientific notation otherwise. Non-finite values give `null`.
pub fn format_f64(v: f64) -> String {
    if !v.is_finite() {
        return "null".into();
    }
    let sci = format!("{v:.16e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..17).contains(&exp) {
        format!("{v:.prec$}", prec = (16 - exp) as usize)
    } else {
        sci
    }
}

struct Digits17;

impl serde_json::ser::Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(format_f64(v).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

/// One-line JSON followed by a newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.to_string(),
            (None, Some(i)) => i.to_string(),
            _ => format_f64(n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => s.clone(),
        Value::Array(_) | Value::Object(_) => unreachable!(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::Object(map) => {
            for (k, x) in map {
                let key = if k.is_empty() { "scalar" } else { k.as_str() };
                flatten(&join(key), x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

/// Two-column `path,value` CSV of any report. Paths join object keys and
/// array indices with dots; the scalar blade key `""` is written as `scalar`.
pub fn to_csv_flat<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value)?;
    let mut rows = Vec::new();
    flatten("", &v, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "value"])?;
    for (p, x) in rows {
        w.write_record([p, x])?;
    }
    finish(w)
}

/// CSV with one row per record, columns taken from the first record.
pub fn to_csv_table<T: Serialize>(records: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header_written = false;
    for r in records {
        let Value::Object(map) = serde_json::to_value(r)? else {
            return Err(CliError::input("table rows must be objects"));
        };
        if !header_written {
            w.write_record(map.keys())?;
            header_written = true;
        }
        w.write_record(map.values().map(|v| match v {
            Value::Array(_) | Value::Object(_) => v.to_string(),
            _ => scalar(v),
        }))?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let buf = w.into_inner().map_err(|e| CliError::input(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("csv of UTF-8 fields"))
}
