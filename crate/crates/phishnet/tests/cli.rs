use std::fs;
use std::path::{Path, PathBuf};

use phishnet::cli::{run, CommandOutcome, EXIT_DATA, EXIT_MODEL, EXIT_OK, EXIT_USAGE};
use phishnet::save_model;
use phishnet_core::{BandThresholds, Network};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

fn cli(args: &[&str]) -> CommandOutcome {
    run(std::iter::once("phishnet").chain(args.iter().copied()))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn zero_model(dir: &Path) -> PathBuf {
    let path = dir.join("zero.json");
    save_model(
        &Network::zeros(&[27, 10, 1]).unwrap(),
        &BandThresholds::default(),
        &path,
    )
    .unwrap();
    path
}

#[test]
fn predict_with_zero_model() {
    let dir = tempfile::tempdir().unwrap();
    let model = zero_model(dir.path());
    let out = cli(&[
        "predict",
        "--model",
        p(&model),
        "--url",
        "https://www.example.com/",
    ]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "score=0.500000 band=Suspicious\n");
    assert_eq!(
        cli(&[
            "predict",
            "--model",
            p(&model),
            "--url",
            "https://www.example.com/"
        ]),
        out
    );

    let page = dir.path().join("page.html");
    fs::write(&page, "<form action=\"\"><input type=password></form>").unwrap();
    let with_page = cli(&[
        "predict",
        "--model",
        p(&model),
        "--url",
        "http://10.0.0.1/",
        "--page",
        p(&page),
    ]);
    assert_eq!(with_page.stdout, "score=0.500000 band=Suspicious\n");
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    for args in [
        vec![
            "train",
            "--features",
            p(&f),
            "--layers",
            "27",
            "--out",
            "m.json",
        ],
        vec![
            "train",
            "--features",
            p(&f),
            "--layers",
            "27,x,1",
            "--out",
            "m.json",
        ],
        vec![
            "train",
            "--features",
            p(&f),
            "--layers",
            "27,0,1",
            "--out",
            "m.json",
        ],
        vec![
            "train",
            "--features",
            p(&f),
            "--lr",
            "-1",
            "--out",
            "m.json",
        ],
        vec![
            "train",
            "--features",
            p(&f),
            "--epochs",
            "0",
            "--out",
            "m.json",
        ],
        vec!["frobnicate"],
        vec!["predict", "--model", "m.json"],
        vec![
            "import-urls",
            "a.txt",
            "--label",
            "maybe",
            "--archive",
            "a.jsonl",
        ],
        vec!["extract", "--archive", "a", "--out", "b", "--bogus"],
        vec![],
    ] {
        let out = cli(&args);
        assert_eq!(out.exit_code, EXIT_USAGE, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let help = cli(&["--help"]);
    assert_eq!(help.exit_code, EXIT_OK);
    assert!(help.stdout.contains("import-phishtank"));
}

#[test]
fn data_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let model = zero_model(d);
    let missing = d.join("missing.csv");
    let bad_csv = d.join("bad.csv");
    fs::write(&bad_csv, "url\nhttp://a.com\n").unwrap();
    let bad_cfg = d.join("bad.toml");
    fs::write(&bad_cfg, "url_length_thresholds = [90, 10]\n").unwrap();
    let bad_matrix = d.join("m.csv");
    fs::write(&bad_matrix, "a,b\n1,2\n").unwrap();
    let archive = d.join("a.jsonl");
    fs::write(
        &archive,
        "{\"url\":\"no scheme\",\"observed_at\":\"2024-01-01T00:00:00Z\",\"label\":\"legit\"}\n",
    )
    .unwrap();
    let corrupt_archive = d.join("c.jsonl");
    fs::write(&corrupt_archive, "{nope\n").unwrap();
    let out_csv = d.join("out.csv");

    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec!["import-phishtank", p(&missing), "--archive", p(&archive)],
            "missing.csv",
        ),
        (
            vec!["import-phishtank", p(&bad_csv), "--archive", p(&archive)],
            "submission_time",
        ),
        (
            vec!["extract", "--archive", p(&missing), "--out", p(&out_csv)],
            "missing.csv",
        ),
        (
            vec![
                "extract",
                "--archive",
                p(&corrupt_archive),
                "--out",
                p(&out_csv),
            ],
            "c.jsonl",
        ),
        (
            vec!["extract", "--archive", p(&archive), "--out", p(&out_csv)],
            "no scheme",
        ),
        (
            vec![
                "extract",
                "--archive",
                p(&archive),
                "--config",
                p(&bad_cfg),
                "--out",
                p(&out_csv),
            ],
            "bad.toml",
        ),
        (
            vec!["train", "--features", p(&bad_matrix), "--out", p(&out_csv)],
            "m.csv",
        ),
        (
            vec!["evaluate", "--model", p(&model), "--features", p(&missing)],
            "missing.csv",
        ),
        (
            vec!["predict", "--model", p(&missing), "--url", "https://a.com/"],
            "missing.csv",
        ),
        (
            vec!["predict", "--model", p(&model), "--url", "not a url"],
            "not a url",
        ),
    ];
    for (args, needle) in cases {
        let out = cli(&args);
        assert_eq!(out.exit_code, EXIT_DATA, "{args:?}: {}", out.stderr);
        assert!(out.stderr.contains(needle), "{args:?}: {}", out.stderr);
    }
}

#[test]
fn model_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let model = zero_model(d);
    let text = fs::read_to_string(&model).unwrap();
    let future = d.join("future.json");
    fs::write(
        &future,
        text.replace("\"format_version\": 1", "\"format_version\": 9"),
    )
    .unwrap();
    let truncated = d.join("truncated.json");
    fs::write(&truncated, &text[..text.len() / 3]).unwrap();
    let small = d.join("small.json");
    save_model(
        &Network::zeros(&[5, 1]).unwrap(),
        &BandThresholds::default(),
        &small,
    )
    .unwrap();
    let matrix = d.join("m.csv");
    fs::write(
        &matrix,
        phishnet::features_csv::write_feature_matrix(&[phishnet_core::TrainingExample::new(
            vec![0.0; 27],
            vec![1.0],
        )]),
    )
    .unwrap();

    let cases: Vec<Vec<&str>> = vec![
        vec!["predict", "--model", p(&future), "--url", "https://a.com/"],
        vec![
            "predict",
            "--model",
            p(&truncated),
            "--url",
            "https://a.com/",
        ],
        vec!["predict", "--model", p(&small), "--url", "https://a.com/"],
        vec!["evaluate", "--model", p(&small), "--features", p(&matrix)],
        vec![
            "train",
            "--features",
            p(&matrix),
            "--layers",
            "26,4,1",
            "--out",
            "x.json",
        ],
        vec![
            "train",
            "--features",
            p(&matrix),
            "--layers",
            "27,4,2",
            "--out",
            "x.json",
        ],
    ];
    for args in cases {
        let out = cli(&args);
        assert_eq!(out.exit_code, EXIT_MODEL, "{args:?}: {}", out.stderr);
        assert!(out.stderr.starts_with("error: "), "{args:?}");
    }
}

struct Pipeline {
    model: Vec<u8>,
    report: Vec<u8>,
    stdout: String,
}

fn pipeline(dir: &Path) -> Pipeline {
    let archive = dir.join("archive.jsonl");
    let features = dir.join("features.csv");
    let model = dir.join("model.json");
    let report = dir.join("report.json");
    let now = "2024-05-03T12:00:00Z";
    let (phishtank, legit) = (fixture("phishtank_sample.csv"), fixture("legit_urls.txt"));
    let mut stdout = String::new();
    let steps: Vec<Vec<&str>> = vec![
        vec!["import-phishtank", &phishtank, "--archive", p(&archive)],
        vec![
            "import-urls",
            &legit,
            "--label",
            "legit",
            "--archive",
            p(&archive),
            "--now",
            now,
        ],
        vec![
            "extract",
            "--archive",
            p(&archive),
            "--out",
            p(&features),
            "--max-age-days",
            "30",
            "--now",
            now,
        ],
        vec![
            "train",
            "--features",
            p(&features),
            "--layers",
            "27,10,1",
            "--lr",
            "0.5",
            "--epochs",
            "200",
            "--seed",
            "42",
            "--out",
            p(&model),
        ],
        vec![
            "evaluate",
            "--model",
            p(&model),
            "--features",
            p(&features),
            "--report",
            p(&report),
        ],
    ];
    for args in steps {
        let out = cli(&args);
        assert_eq!(out.exit_code, EXIT_OK, "{args:?}: {}", out.stderr);
        stdout.push_str(&out.stdout);
    }
    Pipeline {
        model: fs::read(&model).unwrap(),
        report: fs::read(&report).unwrap(),
        stdout,
    }
}

#[test]
fn end_to_end_pipeline_is_accurate_and_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let first = pipeline(a.path());
    let second = pipeline(b.path());
    assert_eq!(first.model, second.model);
    assert_eq!(first.report, second.report);

    let report: serde_json::Value = serde_json::from_slice(&first.report).unwrap();
    assert_eq!(report["total"], 80);
    assert!(report["accuracy"].as_f64().unwrap() >= 0.95, "{report}");
    assert!(first.stdout.contains("imported 40 records"));
    assert!(first.stdout.contains("(1 skipped)"));
}

#[test]
fn extract_staleness_flag() {
    let dir = tempfile::tempdir().unwrap();
    let archive = dir.path().join("a.jsonl");
    let out = dir.path().join("f.csv");
    cli(&[
        "import-phishtank",
        &fixture("phishtank_sample.csv"),
        "--archive",
        p(&archive),
    ]);
    let run_at = |extra: &[&str]| {
        let mut args = vec![
            "extract",
            "--archive",
            p(&archive),
            "--out",
            p(&out),
            "--now",
            "2024-05-04T00:00:00Z",
        ];
        args.extend_from_slice(extra);
        let o = cli(&args);
        assert_eq!(o.exit_code, EXIT_OK, "{}", o.stderr);
        fs::read_to_string(&out).unwrap().lines().count() - 1
    };
    assert_eq!(run_at(&[]), 40);
    let kept = run_at(&["--max-age-days", "2.25"]);
    assert!(kept > 0 && kept < 40, "{kept}");
    assert_eq!(run_at(&["--max-age-days", "0.01"]), 0);
}
