use chrono::{Duration, TimeZone, Utc};
use phishnet_core::{
    band_score, build_dataset, classify, evaluate, filter_stale, majority_baseline_accuracy,
    split_dataset, Band, BandThresholds, ClassifyError, ExtractionConfig, Label, Network,
    TrainConfig, TrainingExample, WebsiteRecord, DEFAULT_MAX_AGE_DAYS,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zero_net() -> Network {
    Network::zeros(&[27, 10, 1]).unwrap()
}

fn example(target: f64) -> TrainingExample {
    TrainingExample::new(vec![0.0; 27], vec![target])
}

/// An all-zero network scores 0.5 everywhere, which the 0.5 decision rule
/// calls phish, so exactly the phish-labelled examples are correct.
fn zero_net_report(phish: usize, legit: usize) -> phishnet_core::EvalReport {
    let mut data: Vec<_> = (0..phish).map(|_| example(1.0)).collect();
    data.extend((0..legit).map(|_| example(0.0)));
    evaluate(&zero_net(), &data, &BandThresholds::default()).unwrap()
}

#[test]
fn proportion_16_of_50() {
    let r = zero_net_report(16, 34);
    assert_eq!(r.correct(), 16);
    assert_eq!(r.total, 50);
    assert_eq!(r.accuracy, 0.32);
}

#[test]
fn counts_52_of_120() {
    let r = zero_net_report(52, 68);
    assert_eq!((r.tp, r.fp, r.tn, r.fn_), (52, 68, 0, 0));
    assert!((r.accuracy - 0.4333).abs() <= 1e-4);
    assert!((r.error_rate - (1.0 - r.accuracy)).abs() < 1e-15);
    assert_eq!(r.bands.get(Band::Suspicious), 120);
}

#[test]
fn evaluate_rejects_empty() {
    assert!(matches!(
        evaluate(&zero_net(), &[], &BandThresholds::default()),
        Err(ClassifyError::Empty)
    ));
    assert!(majority_baseline_accuracy(&[]).is_err());
}

#[test]
fn band_examples_and_cut_points() {
    let b = BandThresholds::default();
    assert_eq!(band_score(0.1, &b), Ok(Band::VeryLegitimate));
    assert_eq!(band_score(0.2, &b), Ok(Band::Legitimate));
    assert_eq!(band_score(0.4, &b), Ok(Band::Suspicious));
    assert_eq!(band_score(0.6, &b), Ok(Band::Phishing));
    assert_eq!(band_score(0.8, &b), Ok(Band::VeryPhishy));
    assert_eq!(band_score(1.0, &b), Ok(Band::VeryPhishy));
    assert_eq!(band_score(0.0, &b), Ok(Band::VeryLegitimate));
    for bad in [-0.01, 1.01, f64::NAN, f64::INFINITY] {
        assert!(band_score(bad, &b).is_err(), "{bad}");
    }
    assert!(BandThresholds::new([0.2, 0.2, 0.6, 0.8]).is_err());
    assert!(BandThresholds::new([0.0, 0.4, 0.6, 0.8]).is_err());
    assert!(BandThresholds::new([0.2, 0.4, 0.6, 1.0]).is_err());
    assert!(BandThresholds::new([0.1, 0.3, 0.5, 0.9]).is_ok());
}

proptest! {
    #[test]
    fn bands_are_monotone(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let t = BandThresholds::default();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(band_score(lo, &t).unwrap() <= band_score(hi, &t).unwrap());
    }

    #[test]
    fn custom_bands_are_monotone(mut cuts in prop::array::uniform4(0.01f64..0.99), a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        cuts.sort_by(f64::total_cmp);
        prop_assume!(cuts.windows(2).all(|w| w[0] < w[1]));
        let t = BandThresholds::new(cuts).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(t.band(lo).unwrap() <= t.band(hi).unwrap());
        for (i, c) in cuts.iter().enumerate() {
            prop_assert_eq!(t.band(*c).unwrap(), Band::ALL[i + 1]);
        }
    }

    #[test]
    fn report_counts_are_conserved(targets in prop::collection::vec(any::<bool>(), 1..60), seed in any::<u64>()) {
        let net = Network::init(&[27, 3, 1], seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<_> = targets
            .iter()
            .map(|&t| TrainingExample::new((0..27).map(|_| rng.gen_range(0..3) as f64 / 2.0).collect(), vec![t as u8 as f64]))
            .collect();
        let r = evaluate(&net, &data, &BandThresholds::default()).unwrap();
        prop_assert_eq!(r.tp + r.fp + r.tn + r.fn_, data.len());
        prop_assert_eq!(r.bands.total(), data.len());
        prop_assert!((0.0..=1.0).contains(&r.accuracy));
    }
}

fn now() -> chrono::DateTime<Utc> {
    Utc.with_ymd_and_hms(2024, 5, 1, 12, 0, 0).unwrap()
}

fn labelled(url: &str, label: Label) -> WebsiteRecord {
    WebsiteRecord::new(url, now()).with_label(label)
}

#[test]
fn classify_with_zero_net_is_suspicious() {
    let r = WebsiteRecord::new("https://www.example.com/", now());
    let v = classify(
        &r,
        &zero_net(),
        &ExtractionConfig::default(),
        &BandThresholds::default(),
    )
    .unwrap();
    assert_eq!(v.score, 0.5);
    assert_eq!(v.band, Band::Suspicious);
    let bad = WebsiteRecord::new("no scheme", now());
    assert!(matches!(
        classify(
            &bad,
            &zero_net(),
            &ExtractionConfig::default(),
            &BandThresholds::default()
        ),
        Err(ClassifyError::Extract(_))
    ));
    let wrong = Network::zeros(&[5, 1]).unwrap();
    assert!(matches!(
        classify(
            &r,
            &wrong,
            &ExtractionConfig::default(),
            &BandThresholds::default()
        ),
        Err(ClassifyError::InputSize { .. })
    ));
}

/// Encoded synthetic vectors where label is phish iff at least 14 of 27 slots are Phishy.
fn separable(n: usize, seed: u64) -> Vec<TrainingExample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=27usize);
            let mut slots: Vec<usize> = (0..27).collect();
            rand::seq::SliceRandom::shuffle(slots.as_mut_slice(), &mut rng);
            let mut input = vec![0.0; 27];
            for (rank, &s) in slots.iter().enumerate() {
                input[s] = if rank < k {
                    1.0
                } else if rng.gen_bool(0.5) {
                    0.5
                } else {
                    0.0
                };
            }
            TrainingExample::new(input, vec![(k >= 14) as u8 as f64])
        })
        .collect()
}

#[test]
fn trained_net_bands_benign_record_very_legitimate() {
    let mut data = separable(300, 3);
    data.push(TrainingExample::new(vec![0.0; 27], vec![0.0]));
    let mut net = Network::init(&[27, 10, 1], 3).unwrap();
    net.train(&data, &TrainConfig::default()).unwrap();

    let url = "https://www.example.com/";
    let mut r = WebsiteRecord::new(url, now()).with_page("<title>Example</title><p>hello</p>");
    r.cert_evidence = Some(phishnet_core::CertEvidence {
        issuer: "DigiCert".into(),
        subject_common_name: "www.example.com".into(),
        valid: true,
        self_signed: false,
    });
    r.dns_evidence = Some(phishnet_core::DnsEvidence {
        resolvable: true,
        domain_age_days: Some(4000.0),
    });
    r.response_headers = Some(vec![]);
    r.redirect_chain = Some(vec![url.into()]);
    let cfg = ExtractionConfig::default();
    assert_eq!(
        phishnet_core::extract_all(&r, &cfg).unwrap().encode(),
        [0.0; 27]
    );
    let v = classify(&r, &net, &cfg, &BandThresholds::default()).unwrap();
    assert!(v.score < 0.2, "{}", v.score);
    assert_eq!(v.band, Band::VeryLegitimate);
    assert_eq!(
        classify(&r, &net, &cfg, &BandThresholds::default()).unwrap(),
        v
    );
}

#[test]
fn separable_data_is_learned() {
    let data = separable(500, 0);
    let split = split_dataset(&data, 0.8, 0).unwrap();
    let mut net = Network::init(&[27, 10, 1], 0).unwrap();
    net.train(&split.train, &TrainConfig::default()).unwrap();
    let bands = BandThresholds::default();
    let train = evaluate(&net, &split.train, &bands).unwrap();
    let test = evaluate(&net, &split.test, &bands).unwrap();
    assert!(train.accuracy >= 0.95, "{}", train.accuracy);
    assert!(test.accuracy > majority_baseline_accuracy(&split.test).unwrap());
}

#[test]
fn build_dataset_preserves_order_and_targets() {
    let cfg = ExtractionConfig::default();
    let records: Vec<_> = (0..10)
        .map(|i| {
            let label = if i % 3 == 0 {
                Label::Phish
            } else {
                Label::Legit
            };
            labelled(
                &format!("http://site{i}.example.com/{}", "x".repeat(i * 10)),
                label,
            )
        })
        .collect();
    let data = build_dataset(&records, &cfg).unwrap();
    assert_eq!(data.len(), 10);
    for (r, ex) in records.iter().zip(&data) {
        assert_eq!(ex.target, vec![r.label.unwrap().target()]);
        assert_eq!(
            ex.input,
            phishnet_core::extract_all(r, &cfg)
                .unwrap()
                .encode()
                .to_vec()
        );
    }
    let mut unlabeled = records.clone();
    unlabeled[4].label = None;
    match build_dataset(&unlabeled, &cfg) {
        Err(ClassifyError::Unlabeled { url }) => assert_eq!(url, records[4].url),
        other => panic!("{other:?}"),
    }
}

fn aged(days: f64) -> WebsiteRecord {
    WebsiteRecord::new(
        "http://example.com/",
        now() - Duration::milliseconds((days * 86_400_000.0) as i64),
    )
}

#[test]
fn staleness_default() {
    assert_eq!(DEFAULT_MAX_AGE_DAYS, 2.25);
    let kept = filter_stale(&[aged(1.0), aged(3.0)], now(), DEFAULT_MAX_AGE_DAYS);
    assert_eq!(kept, vec![aged(1.0)]);
    let all = filter_stale(&[aged(1.0), aged(3.0)], now(), f64::INFINITY);
    assert_eq!(all.len(), 2);
}

proptest! {
    #[test]
    fn staleness_is_idempotent(ages in prop::collection::vec(-2.0f64..10.0, 0..30), max in 0.1f64..5.0) {
        let records: Vec<_> = ages.iter().map(|&a| aged(a)).collect();
        let once = filter_stale(&records, now(), max);
        prop_assert_eq!(filter_stale(&once, now(), max), once.clone());
        prop_assert!(once.iter().all(|r| (now() - r.observed_at).num_milliseconds() as f64 <= max * 86_400_000.0));
    }

    #[test]
    fn split_is_a_partition(n in 2usize..80, frac in 0.05f64..0.95, seed in any::<u64>()) {
        let data: Vec<_> = (0..n).map(|i| TrainingExample::new(vec![i as f64], vec![0.0])).collect();
        let s = split_dataset(&data, frac, seed).unwrap();
        prop_assert_eq!(s.train.len() + s.test.len(), n);
        prop_assert!(!s.train.is_empty() && !s.test.is_empty());
        let mut seen: Vec<usize> = s.train.iter().chain(&s.test).map(|e| e.input[0] as usize).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        prop_assert_eq!(split_dataset(&data, frac, seed).unwrap(), s);
    }
}
