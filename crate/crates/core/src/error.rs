use alloc::string::String;

use crate::indicator::IndicatorId;

/// Failure while evaluating indicators on a record.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("{indicator}: cannot parse url {url:?}: {reason}")]
    InvalidUrl {
        indicator: IndicatorId,
        url: String,
        reason: &'static str,
    },
    #[error("unknown indicator {0:?}")]
    UnknownIndicator(String),
}

/// Invalid extraction configuration.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("threshold pair {name} must satisfy lo < hi (got {lo} >= {hi})")]
    ThresholdOrder {
        name: &'static str,
        lo: f64,
        hi: f64,
    },
    #[error("keyword list {0} contains an entry that is not lowercase")]
    NotLowercase(&'static str),
    #[error("bad public suffix rule {0:?}")]
    SuffixRule(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NetError {
    #[error("a network needs at least 2 layers, got {0}")]
    TooFewLayers(usize),
    #[error("layer {0} has zero units")]
    EmptyLayer(usize),
    #[error("{what}: expected length {expected}, got {actual}")]
    Shape {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("learning rate must be positive and finite, got {0}")]
    LearningRate(f64),
    #[error("max_epochs must be at least 1")]
    ZeroEpochs,
    #[error("dataset is empty")]
    EmptyDataset,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("score {0} is outside [0, 1]")]
    ScoreRange(f64),
    #[error("band cut points must satisfy 0 < c1 < c2 < c3 < c4 < 1")]
    BandOrder,
    #[error("record {url} has no label")]
    Unlabeled { url: String },
    #[error("network expects {expected} inputs, feature vectors have {actual}")]
    InputSize { expected: usize, actual: usize },
    #[error("cannot evaluate an empty example list")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DatasetError {
    #[error("need at least 2 examples to split, got {0}")]
    TooFew(usize),
    #[error("train fraction must lie strictly between 0 and 1, got {0}")]
    Fraction(f64),
}
