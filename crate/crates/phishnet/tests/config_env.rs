//! Kept in its own test binary: it mutates the process environment.

use std::fs;

use phishnet::{load_config, CONFIG_ENV};

#[test]
fn config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "missing_evidence_value = \"phishy\"\n").unwrap();
    std::env::set_var(CONFIG_ENV, &cfg);
    let loaded = load_config(None).unwrap();
    std::env::remove_var(CONFIG_ENV);
    assert_eq!(
        loaded.missing_evidence_value,
        phishnet_core::IndicatorValue::Phishy
    );
    let explicit = dir.path().join("e.toml");
    fs::write(&explicit, "").unwrap();
    assert_eq!(
        load_config(Some(&explicit)).unwrap(),
        phishnet_core::ExtractionConfig::default()
    );
}
