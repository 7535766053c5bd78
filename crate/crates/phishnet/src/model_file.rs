//! JSON model files.
//!
//! ```json
//! {"format_version": 1, "layer_sizes": [27, 10, 1], "activation": "sigmoid",
//!  "weights": [[...], [...]], "band_thresholds": [0.2, 0.4, 0.6, 0.8]}
//! ```
//!
//! `weights[k]` is layer `k`'s `(n_in + 1) x n_out` matrix flattened row-major
//! with the bias row last. Numbers are written in shortest round-trip form, so
//! a save/load cycle is exact.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use phishnet_core::{Activation, BandThresholds, NetError, Network};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt model file: {0}")]
    Corrupt(String),
    #[error("unsupported model format_version {found} (this build reads {FORMAT_VERSION})")]
    Version { found: u64 },
    #[error("unsupported activation {0:?}")]
    Activation(String),
    #[error("inconsistent model shape: {0}")]
    Shape(#[from] NetError),
    #[error("invalid band thresholds {0:?}")]
    Bands([f64; 4]),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    format_version: u64,
    layer_sizes: Vec<usize>,
    activation: String,
    weights: Vec<Vec<f64>>,
    band_thresholds: [f64; 4],
}

pub fn model_to_string(net: &Network, bands: &BandThresholds) -> String {
    let doc = ModelDoc {
        format_version: FORMAT_VERSION,
        layer_sizes: net.layer_sizes().to_vec(),
        activation: net.activation().name().to_string(),
        weights: net
            .weights()
            .iter()
            .map(|w| w.as_slice().to_vec())
            .collect(),
        band_thresholds: bands.cuts(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("model documents always serialize");
    s.push('\n');
    s
}

pub fn model_from_str(text: &str) -> Result<(Network, BandThresholds), ModelError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ModelError::Corrupt(e.to_string()))?;
    let found = value
        .get("format_version")
        .ok_or_else(|| ModelError::Corrupt("missing format_version".into()))?
        .as_u64()
        .ok_or_else(|| {
            ModelError::Corrupt("format_version is not a non-negative integer".into())
        })?;
    if found != FORMAT_VERSION {
        return Err(ModelError::Version { found });
    }
    let doc: ModelDoc =
        serde_json::from_value(value).map_err(|e| ModelError::Corrupt(e.to_string()))?;
    if Activation::from_name(&doc.activation).is_none() {
        return Err(ModelError::Activation(doc.activation));
    }
    let net = Network::from_weights(&doc.layer_sizes, doc.weights)?;
    let bands = BandThresholds::new(doc.band_thresholds)
        .map_err(|_| ModelError::Bands(doc.band_thresholds))?;
    Ok((net, bands))
}

pub fn save_model(net: &Network, bands: &BandThresholds, path: &Path) -> Result<(), ModelError> {
    fs::write(path, model_to_string(net, bands)).map_err(|source| ModelError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_model(path: &Path) -> Result<(Network, BandThresholds), ModelError> {
    let text = fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    model_from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let net = Network::init(&[4, 3, 2], 11).unwrap();
        let bands = BandThresholds::new([0.1, 0.3, 0.7, 0.9]).unwrap();
        let text = model_to_string(&net, &bands);
        let (back, b2) = model_from_str(&text).unwrap();
        assert_eq!(b2, bands);
        assert_eq!(back.layer_sizes(), net.layer_sizes());
        for (a, b) in back.flat_weights().zip(net.flat_weights()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(model_to_string(&back, &b2), text);
    }

    #[test]
    fn distinct_errors() {
        let text = model_to_string(
            &Network::zeros(&[2, 1]).unwrap(),
            &BandThresholds::default(),
        );
        assert!(matches!(
            model_from_str(&text[..text.len() / 2]),
            Err(ModelError::Corrupt(_))
        ));
        let future = text.replace("\"format_version\": 1", "\"format_version\": 2");
        assert!(matches!(
            model_from_str(&future),
            Err(ModelError::Version { found: 2 })
        ));
        let tanh = text.replace("sigmoid", "tanh");
        assert!(matches!(
            model_from_str(&tanh),
            Err(ModelError::Activation(_))
        ));
        let shape = text.replace("[\n    2,\n    1\n  ]", "[\n    3,\n    1\n  ]");
        assert_ne!(shape, text);
        assert!(matches!(model_from_str(&shape), Err(ModelError::Shape(_))));
        let bands = text.replace("0.2,", "0.5,");
        assert!(matches!(model_from_str(&bands), Err(ModelError::Bands(_))));
        assert!(matches!(model_from_str("[]"), Err(ModelError::Corrupt(_))));
    }
}
