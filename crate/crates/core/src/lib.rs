//! Core of the phishnet toolkit.
//!
//! Everything in this crate is a pure function of its inputs and builds under
//! `no_std` with `alloc`: URL and HTML scanning, evaluation of the 27 ternary
//! phishing indicators, the multilayer perceptron with its backpropagation
//! update rules, verdict banding and evaluation metrics. File formats, dataset
//! ingestion, network fetches and the command line live in the `phishnet`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classifier;
pub mod config;
pub mod dataset;
pub mod error;
pub mod features;
pub mod html;
pub mod indicator;
pub mod nn;
pub mod record;
pub mod suffix;
pub mod text;
pub mod url;

pub use classifier::{
    band_score, build_dataset, classify, evaluate, majority_baseline_accuracy, Band, BandHistogram,
    BandThresholds, EvalReport, PhishVerdict, DECISION_THRESHOLD,
};
pub use config::ExtractionConfig;
pub use dataset::{filter_stale, split_dataset, DatasetSplit, DEFAULT_MAX_AGE_DAYS};
pub use error::{ClassifyError, ConfigError, DatasetError, ExtractError, NetError};
pub use features::{evaluate_indicator, extract_all, FeatureVector};
pub use indicator::{Criterion, IndicatorId, IndicatorValue, INDICATOR_COUNT};
pub use nn::{
    sigmoid, sigmoid_prime, Activation, BackpropTrace, LayerActivations, Network, Perceptron,
    TrainConfig, TrainOutcome, TrainingExample,
};
pub use record::{CertEvidence, DnsEvidence, Label, WebsiteRecord};
