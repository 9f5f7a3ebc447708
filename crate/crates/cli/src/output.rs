use std::io::{self, Write};
use std::path::Path;

use boolfn_core::{ClaimKind, SCHEMA_VERSION};
use serde_json::{json, Value};

use crate::commands::Report;
use crate::config::Format;

pub const CSV_COLUMNS: [&str; 13] = [
    "schema_version",
    "mode",
    "suite",
    "m",
    "seed",
    "n_samples",
    "claim_id",
    "kind",
    "param",
    "theory",
    "empirical",
    "slack",
    "verdict",
];

/// JSON object with the envelope fields merged over the report body.
pub fn to_json(report: &Report) -> Value {
    let mut body = report.body.clone();
    let obj = body.as_object_mut().expect("report bodies are objects");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("mode".into(), json!(report.mode));
    obj.insert("m".into(), json!(report.m));
    if let Some(suite) = report.suite {
        obj.insert("suite".into(), json!(suite));
    }
    if let Some(seed) = report.seed {
        obj.insert("seed".into(), json!(seed));
    }
    if let Some(n) = report.n_samples {
        obj.insert("n_samples".into(), json!(n));
    }
    body
}

pub fn render(report: &Report, format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(&to_json(report))?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => render_csv(report),
    }
}

fn render_csv(report: &Report) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    for c in &report.claims {
        let kind = match c.kind {
            ClaimKind::Equality => "equality",
            ClaimKind::Bound => "bound",
            ClaimKind::Informational => "informational",
        };
        w.write_record([
            SCHEMA_VERSION.to_string(),
            report.mode.to_owned(),
            report.suite.unwrap_or("").to_owned(),
            report.m.to_string(),
            opt(report.seed),
            opt(report.n_samples),
            c.claim_id.clone(),
            kind.to_owned(),
            c.param.clone(),
            c.theory.to_string(),
            c.empirical.to_string(),
            c.slack.to_string(),
            c.verdict.to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so a reader never sees a partial report.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
