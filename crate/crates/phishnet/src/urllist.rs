//! Plain URL lists, one per line.

use chrono::{DateTime, Utc};
use phishnet_core::{Label, WebsiteRecord};

use crate::{Ingested, RowError};

/// Reads one URL per line with the given label and timestamp. Blank lines and
/// lines starting with `#` are ignored; malformed URLs are skipped and reported.
pub fn parse_url_list(content: &str, label: Label, now: DateTime<Utc>) -> Ingested {
    let mut out = Ingested::default();
    for (i, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let record = WebsiteRecord::new(line, now).with_label(label);
        match record.validate() {
            Ok(()) => out.records.push(record),
            Err(reason) => out.skipped.push(RowError {
                row: i + 1,
                message: format!("bad url {line:?}: {reason}"),
            }),
        }
    }
    out
}
