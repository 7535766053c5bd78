//! Feature-matrix CSV: the 27 indicator names in canonical order, then `label`.
//! Values are written as `0`, `0.5` and `1`; labels as `0` (legit) and `1` (phish).

use phishnet_core::{
    build_dataset, ClassifyError, ExtractionConfig, IndicatorId, TrainingExample, WebsiteRecord,
    INDICATOR_COUNT,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{url}: {source}")]
    Row { url: String, source: ClassifyError },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("bad header: {0}")]
    Header(String),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
}

/// The header columns.
pub fn header() -> Vec<&'static str> {
    IndicatorId::ALL
        .iter()
        .map(|id| id.name())
        .chain(["label"])
        .collect()
}

fn render(v: f64) -> &'static str {
    if v == 0.0 {
        "0"
    } else if v == 0.5 {
        "0.5"
    } else {
        "1"
    }
}

/// Renders already-encoded examples.
pub fn write_feature_matrix(examples: &[TrainingExample]) -> String {
    let mut out = header().join(",");
    out.push('\n');
    for ex in examples {
        let cells: Vec<&str> = ex
            .input
            .iter()
            .chain(&ex.target)
            .map(|&v| render(v))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Extracts and encodes every (labelled) record. The first failing record
/// aborts the export and is named in the error.
pub fn export_feature_matrix(
    records: &[WebsiteRecord],
    cfg: &ExtractionConfig,
) -> Result<String, ExportError> {
    let mut examples = Vec::with_capacity(records.len());
    for r in records {
        let mut ex =
            build_dataset(core::slice::from_ref(r), cfg).map_err(|source| ExportError::Row {
                url: r.url.clone(),
                source,
            })?;
        examples.append(&mut ex);
    }
    Ok(write_feature_matrix(&examples))
}

fn cell(s: &str, allowed: &[f64]) -> Option<f64> {
    let v: f64 = s.trim().parse().ok()?;
    allowed.contains(&v).then_some(v)
}

/// Parses a feature matrix back into examples. Any malformed row fails the import.
pub fn parse_feature_matrix(content: &str) -> Result<Vec<TrainingExample>, MatrixError> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(content.as_bytes());
    let got = reader
        .headers()
        .map_err(|e| MatrixError::Header(e.to_string()))?;
    let want = header();
    if got.len() != want.len() {
        return Err(MatrixError::Header(format!(
            "expected {} columns, found {}",
            want.len(),
            got.len()
        )));
    }
    if let Some((g, w)) = got.iter().zip(&want).find(|(g, w)| g.trim() != **w) {
        return Err(MatrixError::Header(format!(
            "expected column `{w}`, found `{g}`"
        )));
    }

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| MatrixError::Row {
            row: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let bad = |message: String| MatrixError::Row { row: line, message };
        if row.len() != want.len() {
            return Err(bad(format!(
                "expected {} fields, found {}",
                want.len(),
                row.len()
            )));
        }
        let mut input = Vec::with_capacity(INDICATOR_COUNT);
        for (k, s) in row.iter().take(INDICATOR_COUNT).enumerate() {
            let v = cell(s, &[0.0, 0.5, 1.0])
                .ok_or_else(|| bad(format!("{}: bad value {s:?}", want[k])))?;
            input.push(v);
        }
        let s = &row[INDICATOR_COUNT];
        let label = cell(s, &[0.0, 1.0]).ok_or_else(|| bad(format!("label: bad value {s:?}")))?;
        out.push(TrainingExample::new(input, vec![label]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_has_28_columns() {
        let h = header();
        assert_eq!(h.len(), 28);
        assert_eq!(h[0], "using_ip_address");
        assert_eq!(h[27], "label");
        assert_eq!(
            parse_feature_matrix(&write_feature_matrix(&[])).unwrap(),
            vec![]
        );
    }

    #[test]
    fn rejects_bad_cells() {
        let head = header().join(",");
        let row = |v: &str, label: &str| format!("{head}\n{}{v},{label}\n", "0,".repeat(26));
        assert!(parse_feature_matrix(&row("0.5", "1")).is_ok());
        assert!(matches!(
            parse_feature_matrix(&row("0.25", "1")),
            Err(MatrixError::Row { row: 2, .. })
        ));
        assert!(parse_feature_matrix(&row("1", "0.5")).is_err());
        assert!(parse_feature_matrix(&row("x", "0")).is_err());
        assert!(parse_feature_matrix("a,b\n").is_err());
        let swapped = head.replacen("using_ip_address", "at_symbol", 1);
        assert!(matches!(
            parse_feature_matrix(&swapped),
            Err(MatrixError::Header(_))
        ));
    }
}
