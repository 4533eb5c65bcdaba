use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

/// Measured execution time of one source file.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelRecord {
    pub path: String,
    pub raw_seconds: f64,
    /// Number of measurements behind `raw_seconds`.
    pub runs: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Labels {
    /// One record per distinct path, sorted by path.
    pub records: Vec<LabelRecord>,
    pub warnings: Vec<String>,
}

impl Labels {
    pub fn get(&self, path: &str) -> Option<&LabelRecord> {
        self.records
            .binary_search_by(|r| r.path.as_str().cmp(path))
            .ok()
            .map(|i| &self.records[i])
    }
}

#[derive(Deserialize)]
struct Row {
    path: String,
    seconds: String,
    #[serde(default)]
    runs: Option<String>,
}

/// Read a `path,seconds[,runs]` label file.
///
/// Rows repeating a path are averaged with equal weight; the merged record's
/// `runs` is the sum of the rows' `runs` (1 when the column is absent).
/// Paths that exist neither as given nor under one of `roots` produce a
/// warning and are kept.
pub fn ingest_labels(csv_path: &Path, roots: &[PathBuf]) -> Result<Labels> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(csv_path)?;
    let headers = reader.headers()?.clone();
    if headers.get(0) != Some("path") || headers.get(1) != Some("seconds") {
        return Err(Error::Label {
            path: csv_path.to_path_buf(),
            line: 1,
            message: format!("expected header `path,seconds[,runs]`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }

    let mut merged: BTreeMap<String, (f64, usize, u32)> = BTreeMap::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let row: Row = record.deserialize(Some(&headers))?;
        let bad = |message: String| Error::Label {
            path: csv_path.to_path_buf(),
            line,
            message,
        };
        let seconds: f64 = row
            .seconds
            .parse()
            .map_err(|_| bad(format!("seconds `{}` is not a number", row.seconds)))?;
        if !seconds.is_finite() || seconds <= 0.0 {
            return Err(bad(format!("seconds must be positive, got {seconds}")));
        }
        let runs = match row.runs.as_deref() {
            None | Some("") => 1,
            Some(r) => r
                .parse::<u32>()
                .ok()
                .filter(|&r| r > 0)
                .ok_or_else(|| bad(format!("runs `{r}` is not a positive integer")))?,
        };
        let entry = merged.entry(normalize_path(&row.path)).or_insert((0.0, 0, 0));
        entry.0 += seconds;
        entry.1 += 1;
        entry.2 += runs;
    }

    let base = csv_path.parent().unwrap_or(Path::new("."));
    let mut labels = Labels::default();
    for (path, (sum, rows, runs)) in merged {
        let exists = Path::new(&path).exists()
            || base.join(&path).exists()
            || roots.iter().any(|r| r.join(&path).exists() || r.parent().is_some_and(|p| p.join(&path).exists()));
        if !exists {
            labels.warnings.push(format!("label path `{path}` not found on disk"));
        }
        labels.records.push(LabelRecord {
            path,
            raw_seconds: sum / rows as f64,
            runs: Some(runs),
        });
    }
    Ok(labels)
}

/// Forward slashes, no leading `./`.
pub fn normalize_path(path: &str) -> String {
    let p = path.replace('\\', "/");
    p.trim_start_matches("./").to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn repeated_rows_are_averaged() {
        let f = write("path,seconds\na.java,2.0\na.java,4.0\nb.java,0.5\n");
        let labels = ingest_labels(f.path(), &[]).unwrap();
        assert_eq!(labels.records.len(), 2);
        assert_eq!(labels.get("a.java").unwrap().raw_seconds, 3.0);
        assert_eq!(labels.get("a.java").unwrap().runs, Some(2));
        assert_eq!(labels.get("b.java").unwrap().raw_seconds, 0.5);
        assert_eq!(labels.warnings.len(), 2);
    }

    #[test]
    fn negative_seconds_report_line() {
        let f = write("path,seconds,runs\na.java,1,5\nb.java,-1,5\n");
        match ingest_labels(f.path(), &[]).unwrap_err() {
            Error::Label { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_numeric_seconds_rejected() {
        let f = write("path,seconds\na.java,fast\n");
        assert!(matches!(ingest_labels(f.path(), &[]), Err(Error::Label { line: 2, .. })));
    }

    #[test]
    fn wrong_header_rejected() {
        let f = write("file,time\na.java,1\n");
        assert!(matches!(ingest_labels(f.path(), &[]), Err(Error::Label { line: 1, .. })));
    }
}
