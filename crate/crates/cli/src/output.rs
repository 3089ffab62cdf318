use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::record::{Record, COLUMNS};

/// 17 significant digits; the empty string for an undefined value.
pub fn format_number(v: Option<f64>) -> String {
    match v {
        // +0.0 folds -0.0 into 0.0
        Some(x) => format!("{:.16e}", x + 0.0),
        None => String::new(),
    }
}

pub fn write_csv<W: Write>(mut out: W, records: &[Record]) -> io::Result<()> {
    let header = match records.first() {
        Some(r) => r.header(),
        None => COLUMNS.to_vec(),
    };
    writeln!(out, "{}", header.join(","))?;
    for r in records {
        let cells: Vec<String> = r.cells().into_iter().map(format_number).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn to_json(params: Value, spec: Value, records: &[Record]) -> Value {
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            let row: Map<String, Value> = r
                .header()
                .into_iter()
                .zip(r.cells())
                .map(|(k, v)| {
                    (
                        k.to_string(),
                        v.map_or(Value::Null, |x| Value::from(x + 0.0)),
                    )
                })
                .collect();
            Value::Object(row)
        })
        .collect();
    json!({ "params": params, "spec": spec, "rows": rows })
}

/// Run `f` against standard output or the named file.
pub fn with_sink<F>(path: Option<&Path>, f: F) -> io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)?;
            w.flush()
        }
    }
}

pub fn error_json(code: &str, message: &str) -> String {
    json!({ "error": { "code": code, "message": message } }).to_string()
}
