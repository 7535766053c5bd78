//! Pure dataset utilities: staleness filtering and seeded train/test splits.

use alloc::vec::Vec;

use chrono::{DateTime, Utc};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::DatasetError;
use crate::nn::TrainingExample;
use crate::record::WebsiteRecord;

/// Average lifetime of a phishing site, in days.
pub const DEFAULT_MAX_AGE_DAYS: f64 = 2.25;

const SECONDS_PER_DAY: f64 = 86_400.0;

/// Keeps records observed at most `max_age_days` before `now`, in order.
/// `f64::INFINITY` disables the filter. Records stamped after `now` are kept.
pub fn filter_stale(
    records: &[WebsiteRecord],
    now: DateTime<Utc>,
    max_age_days: f64,
) -> Vec<WebsiteRecord> {
    records
        .iter()
        .filter(|r| {
            let age = now.signed_duration_since(r.observed_at);
            let age_days = age.num_milliseconds() as f64 / 1000.0 / SECONDS_PER_DAY;
            age_days <= max_age_days
        })
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSplit {
    pub train: Vec<TrainingExample>,
    pub test: Vec<TrainingExample>,
    pub seed: u64,
    pub train_fraction: f64,
}

/// Seeded shuffle, then the first `round(fraction * n)` examples (clamped to
/// `1..=n-1`) form the training set.
pub fn split_dataset(
    examples: &[TrainingExample],
    train_fraction: f64,
    seed: u64,
) -> Result<DatasetSplit, DatasetError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DatasetError::Fraction(train_fraction));
    }
    let n = examples.len();
    if n < 2 {
        return Err(DatasetError::TooFew(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_train = libm::round(train_fraction * n as f64).clamp(1.0, (n - 1) as f64) as usize;
    let pick = |idx: &[usize]| idx.iter().map(|&i| examples[i].clone()).collect();
    Ok(DatasetSplit {
        train: pick(&order[..n_train]),
        test: pick(&order[n_train..]),
        seed,
        train_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use chrono::{Duration, TimeZone};

    fn at(days_ago: f64, now: DateTime<Utc>) -> WebsiteRecord {
        let ms = (days_ago * 86_400_000.0) as i64;
        WebsiteRecord::new("http://example.com/", now - Duration::milliseconds(ms))
    }

    #[test]
    fn staleness_default() {
        let now = Utc.with_ymd_and_hms(2024, 5, 1, 12, 0, 0).unwrap();
        let records = vec![at(1.0, now), at(3.0, now), at(2.25, now), at(-1.0, now)];
        let kept = filter_stale(&records, now, DEFAULT_MAX_AGE_DAYS);
        assert_eq!(
            kept,
            vec![records[0].clone(), records[2].clone(), records[3].clone()]
        );
        assert_eq!(filter_stale(&records, now, f64::INFINITY), records);
        assert_eq!(filter_stale(&kept, now, DEFAULT_MAX_AGE_DAYS), kept);
    }

    #[test]
    fn split_sizes() {
        let ex: Vec<TrainingExample> = (0..10)
            .map(|i| TrainingExample::new(vec![i as f64], vec![0.0]))
            .collect();
        let s = split_dataset(&ex, 0.8, 42).unwrap();
        assert_eq!((s.train.len(), s.test.len()), (8, 2));
        assert_eq!(s, split_dataset(&ex, 0.8, 42).unwrap());

        let three = &ex[..3];
        let s = split_dataset(three, 0.5, 1).unwrap();
        assert_eq!(s.train.len() + s.test.len(), 3);
        assert!(s.train.len() == 2 && s.test.len() == 1);

        assert_eq!(
            split_dataset(&ex[..1], 0.5, 1),
            Err(DatasetError::TooFew(1))
        );
        assert!(split_dataset(&ex, 1.0, 1).is_err());
        assert!(split_dataset(&ex, 0.0, 1).is_err());
    }
}
