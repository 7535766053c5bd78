//! File formats, dataset ingestion, page fetching and the `phishnet` command
//! line, built on [`phishnet_core`].

pub mod archive;
pub mod cli;
pub mod config_file;
pub mod features_csv;
pub mod fetch;
pub mod model_file;
pub mod phishtank;
pub mod report;
pub mod timestamp;
pub mod urllist;

pub use archive::{ArchiveError, ArchiveIndex, ArchiveStore};
pub use config_file::{load_config, parse_config, ConfigFileError, CONFIG_ENV};
pub use features_csv::{export_feature_matrix, parse_feature_matrix, ExportError, MatrixError};
pub use fetch::{fetch_record, FetchError};
pub use model_file::{
    load_model, model_from_str, model_to_string, save_model, ModelError, FORMAT_VERSION,
};
pub use phishtank::{parse_phishtank_csv, PhishTankError};
pub use urllist::parse_url_list;

use phishnet_core::WebsiteRecord;

/// A skipped input row. `row` is the 1-based line number in the source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub row: usize,
    pub message: String,
}

impl std::fmt::Display for RowError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "row {}: {}", self.row, self.message)
    }
}

/// Records parsed from an ingestion source, plus the rows that were skipped.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ingested {
    pub records: Vec<WebsiteRecord>,
    pub skipped: Vec<RowError>,
}
