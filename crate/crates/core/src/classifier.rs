//! Verdict banding, the extraction-to-network pipeline and evaluation metrics.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::config::ExtractionConfig;
use crate::error::ClassifyError;
use crate::features::extract_all;
use crate::indicator::INDICATOR_COUNT;
use crate::nn::{Network, TrainingExample};
use crate::record::WebsiteRecord;

/// Five-level verdict, ordered from least to most phishy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Band {
    VeryLegitimate,
    Legitimate,
    Suspicious,
    Phishing,
    VeryPhishy,
}

impl Band {
    pub const ALL: [Band; 5] = [
        Self::VeryLegitimate,
        Self::Legitimate,
        Self::Suspicious,
        Self::Phishing,
        Self::VeryPhishy,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Self::VeryLegitimate => "VeryLegitimate",
            Self::Legitimate => "Legitimate",
            Self::Suspicious => "Suspicious",
            Self::Phishing => "Phishing",
            Self::VeryPhishy => "VeryPhishy",
        }
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Four increasing cut points splitting [0, 1] into five lower-inclusive bands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandThresholds {
    cuts: [f64; 4],
}

impl Default for BandThresholds {
    fn default() -> Self {
        Self {
            cuts: [0.2, 0.4, 0.6, 0.8],
        }
    }
}

impl BandThresholds {
    pub fn new(cuts: [f64; 4]) -> Result<Self, ClassifyError> {
        let inside = cuts.iter().all(|&c| c > 0.0 && c < 1.0);
        let increasing = cuts.windows(2).all(|w| w[0] < w[1]);
        if inside && increasing {
            Ok(Self { cuts })
        } else {
            Err(ClassifyError::BandOrder)
        }
    }

    pub fn cuts(&self) -> [f64; 4] {
        self.cuts
    }

    /// Band of `score`; a score equal to a cut point falls in the upper band.
    pub fn band(&self, score: f64) -> Result<Band, ClassifyError> {
        if !(0.0..=1.0).contains(&score) {
            return Err(ClassifyError::ScoreRange(score));
        }
        let above = self.cuts.iter().filter(|&&c| score >= c).count();
        Ok(Band::ALL[above])
    }
}

pub fn band_score(score: f64, bands: &BandThresholds) -> Result<Band, ClassifyError> {
    bands.band(score)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PhishVerdict {
    pub score: f64,
    pub band: Band,
}

fn check_input_size(net: &Network) -> Result<(), ClassifyError> {
    if net.input_size() != INDICATOR_COUNT {
        return Err(ClassifyError::InputSize {
            expected: net.input_size(),
            actual: INDICATOR_COUNT,
        });
    }
    Ok(())
}

/// Extracts, encodes and scores one record.
pub fn classify(
    record: &WebsiteRecord,
    net: &Network,
    cfg: &ExtractionConfig,
    bands: &BandThresholds,
) -> Result<PhishVerdict, ClassifyError> {
    check_input_size(net)?;
    let features = extract_all(record, cfg)?;
    let score = net.predict(&features.encode())?[0];
    Ok(PhishVerdict {
        score,
        band: bands.band(score)?,
    })
}

/// Encoded feature vectors with targets `[1.0]` (phish) or `[0.0]` (legit), in input order.
pub fn build_dataset(
    records: &[WebsiteRecord],
    cfg: &ExtractionConfig,
) -> Result<Vec<TrainingExample>, ClassifyError> {
    records
        .iter()
        .map(|r| {
            let label = r
                .label
                .ok_or_else(|| ClassifyError::Unlabeled { url: r.url.clone() })?;
            let features = extract_all(r, cfg)?;
            Ok(TrainingExample::new(
                features.encode().to_vec(),
                vec![label.target()],
            ))
        })
        .collect()
}

/// Scores at or above this count as a phish decision.
pub const DECISION_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandHistogram {
    pub very_legitimate: usize,
    pub legitimate: usize,
    pub suspicious: usize,
    pub phishing: usize,
    pub very_phishy: usize,
}

impl BandHistogram {
    pub fn add(&mut self, band: Band) {
        *self.slot(band) += 1;
    }

    fn slot(&mut self, band: Band) -> &mut usize {
        match band {
            Band::VeryLegitimate => &mut self.very_legitimate,
            Band::Legitimate => &mut self.legitimate,
            Band::Suspicious => &mut self.suspicious,
            Band::Phishing => &mut self.phishing,
            Band::VeryPhishy => &mut self.very_phishy,
        }
    }

    pub fn get(&self, band: Band) -> usize {
        match band {
            Band::VeryLegitimate => self.very_legitimate,
            Band::Legitimate => self.legitimate,
            Band::Suspicious => self.suspicious,
            Band::Phishing => self.phishing,
            Band::VeryPhishy => self.very_phishy,
        }
    }

    pub fn total(&self) -> usize {
        Band::ALL.iter().map(|b| self.get(*b)).sum()
    }
}

/// Binary confusion counts at [`DECISION_THRESHOLD`] plus the band histogram.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalReport {
    pub total: usize,
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[cfg_attr(feature = "serde", serde(rename = "fn"))]
    pub fn_: usize,
    pub accuracy: f64,
    pub error_rate: f64,
    pub bands: BandHistogram,
}

impl EvalReport {
    /// Builds the rates from raw confusion counts.
    pub fn from_counts(tp: usize, fp: usize, tn: usize, fn_: usize, bands: BandHistogram) -> Self {
        let total = tp + fp + tn + fn_;
        let accuracy = if total == 0 {
            0.0
        } else {
            (tp + tn) as f64 / total as f64
        };
        Self {
            total,
            tp,
            fp,
            tn,
            fn_,
            accuracy,
            error_rate: 1.0 - accuracy,
            bands,
        }
    }

    pub fn correct(&self) -> usize {
        self.tp + self.tn
    }
}

pub fn evaluate(
    net: &Network,
    examples: &[TrainingExample],
    bands: &BandThresholds,
) -> Result<EvalReport, ClassifyError> {
    if examples.is_empty() {
        return Err(ClassifyError::Empty);
    }
    let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
    let mut hist = BandHistogram::default();
    for ex in examples {
        let score = net.predict(&ex.input)?[0];
        let predicted = score >= DECISION_THRESHOLD;
        let actual = ex.target.first().is_some_and(|&t| t >= DECISION_THRESHOLD);
        match (predicted, actual) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, false) => tn += 1,
            (false, true) => fn_ += 1,
        }
        hist.add(bands.band(score)?);
    }
    Ok(EvalReport::from_counts(tp, fp, tn, fn_, hist))
}

/// Accuracy of always predicting the more common class.
pub fn majority_baseline_accuracy(examples: &[TrainingExample]) -> Result<f64, ClassifyError> {
    if examples.is_empty() {
        return Err(ClassifyError::Empty);
    }
    let phish = examples
        .iter()
        .filter(|e| e.target.first().is_some_and(|&t| t >= DECISION_THRESHOLD))
        .count();
    let majority = phish.max(examples.len() - phish);
    Ok(majority as f64 / examples.len() as f64)
}
