//! Run reports: a JSON summary plus CSV rows, written atomically.
//!
//! CSV files start with a `schema` column holding [`CSV_SCHEMA`]; the column
//! set of each command only changes together with that number. Timing
//! columns end in `_ns` or `_s` and are the only nondeterministic fields.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use fbpaths::stats::{Aggregate, Summary};
use serde::Serialize;
use serde_json::{json, Value};

pub const CSV_SCHEMA: u32 = 1;

/// Writes to `path` through a temporary file in the same directory, so
/// readers never observe a partial file.
pub fn write_atomic(path: &Path, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut buf = std::io::BufWriter::new(tmp.as_file_mut());
        write(&mut buf)?;
        buf.flush()?;
    }
    // Temp files are created owner-only; reports should be world-readable.
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644))?;
    }
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Per-field mean, standard error, min and max over numeric row fields.
/// Identity and timing fields are skipped.
pub fn aggregate<R: Serialize>(rows: &[R]) -> Result<BTreeMap<String, Aggregate>> {
    let mut acc: BTreeMap<String, Summary> = BTreeMap::new();
    for row in rows {
        let Value::Object(fields) = serde_json::to_value(row)? else { continue };
        for (k, v) in fields {
            if matches!(k.as_str(), "schema" | "trial" | "seed" | "source" | "n")
                || k.ends_with("_ns")
                || k.ends_with("_s")
            {
                continue;
            }
            if let Some(x) = v.as_f64() {
                acc.entry(k).or_default().push(x);
            }
        }
    }
    Ok(acc.iter().map(|(k, s)| (k.clone(), Aggregate::from(s))).collect())
}

pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub summary: Value,
    rows: Option<(Vec<Value>, Vec<u8>)>,
}

impl Report {
    pub fn new(command: &'static str, config: Value, summary: Value) -> Self {
        Self { command, config, summary, rows: None }
    }

    /// Attaches per-trial rows: embedded in the JSON and written as CSV.
    pub fn with_rows<R: Serialize>(mut self, rows: &[R]) -> Result<Self> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r)?;
        }
        let csv = w.into_inner().map_err(|e| anyhow::anyhow!("csv: {e}"))?;
        let values = rows.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
        self.rows = Some((values, csv));
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "config": self.config,
            "summary": self.summary,
        });
        if let Some((rows, _)) = &self.rows {
            v["rows"] = Value::Array(rows.clone());
        }
        v
    }

    /// Prints the summary to stdout and, with an output directory, writes
    /// `<stem>.json` and `<stem>.csv`. Returns the paths written.
    pub fn emit(&self, out_dir: Option<&Path>, tag: Option<&str>) -> Result<Vec<PathBuf>> {
        let json = self.to_json();
        let text = serde_json::to_string_pretty(&json!({ "command": self.command, "summary": self.summary }))?;
        match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        }
        let Some(dir) = out_dir else { return Ok(Vec::new()) };
        let stem = tag.unwrap_or(self.command);
        let mut written = Vec::new();
        let json_path = dir.join(format!("{stem}.json"));
        write_atomic(&json_path, |w| {
            serde_json::to_writer_pretty(&mut *w, &json)?;
            writeln!(w)?;
            Ok(())
        })?;
        written.push(json_path);
        if let Some((_, csv)) = &self.rows {
            let csv_path = dir.join(format!("{stem}.csv"));
            write_atomic(&csv_path, |w| Ok(w.write_all(csv)?))?;
            written.push(csv_path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        schema: u32,
        trial: usize,
        x: f64,
        wall_time_ns: u64,
    }

    #[test]
    fn aggregates_skip_identity_and_timing() {
        let rows = [
            Row { schema: 1, trial: 0, x: 1.0, wall_time_ns: 5 },
            Row { schema: 1, trial: 1, x: 3.0, wall_time_ns: 9 },
        ];
        let a = aggregate(&rows).unwrap();
        assert_eq!(a.keys().collect::<Vec<_>>(), vec!["x"]);
        assert_eq!(a["x"].mean, 2.0);
        assert_eq!((a["x"].min, a["x"].max), (1.0, 3.0));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub").join("f.txt");
        write_atomic(&p, |w| Ok(w.write_all(b"one")?)).unwrap();
        write_atomic(&p, |w| Ok(w.write_all(b"two")?)).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
