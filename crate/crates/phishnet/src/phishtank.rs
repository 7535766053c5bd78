//! PhishTank CSV exports.

use phishnet_core::{Label, WebsiteRecord};
use thiserror::Error;

use crate::timestamp::parse_timestamp;
use crate::{Ingested, RowError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhishTankError {
    #[error("missing required column `{0}`")]
    MissingColumn(&'static str),
    #[error("unreadable header: {0}")]
    Header(String),
}

/// Parses a PhishTank export. Only `url` and `submission_time` are required;
/// every record is labelled phish. Rows with a bad URL or timestamp are skipped
/// and reported.
pub fn parse_phishtank_csv(content: &str) -> Result<Ingested, PhishTankError> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(content.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| PhishTankError::Header(e.to_string()))?
        .clone();
    let column = |name: &'static str| {
        headers
            .iter()
            .position(|h| {
                h.trim()
                    .trim_start_matches('\u{feff}')
                    .eq_ignore_ascii_case(name)
            })
            .ok_or(PhishTankError::MissingColumn(name))
    };
    let url_col = column("url")?;
    let time_col = column("submission_time")?;

    let mut out = Ingested::default();
    for row in reader.records() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line() as usize);
                out.skipped.push(RowError {
                    row: line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line() as usize);
        let skip = |message: String| RowError { row: line, message };
        let url = row.get(url_col).unwrap_or("").trim();
        let stamp = row.get(time_col).unwrap_or("");
        let Some(observed_at) = parse_timestamp(stamp) else {
            out.skipped
                .push(skip(format!("bad submission_time {stamp:?}")));
            continue;
        };
        let record = WebsiteRecord::new(url, observed_at).with_label(Label::Phish);
        if let Err(reason) = record.validate() {
            out.skipped.push(skip(format!("bad url {url:?}: {reason}")));
            continue;
        }
        out.records.push(record);
    }
    Ok(out)
}
