//! The `phishnet` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or file-format problem,
//! 3 model or shape problem.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use chrono::{DateTime, Utc};
use clap::{Parser, Subcommand, ValueEnum};
use phishnet_core::{
    classify, evaluate, filter_stale, BandThresholds, ClassifyError, Label, NetError, Network,
    TrainConfig, WebsiteRecord,
};

use crate::archive::ArchiveStore;
use crate::config_file::load_config;
use crate::features_csv::{export_feature_matrix, parse_feature_matrix};
use crate::fetch::fetch_record;
use crate::model_file::{load_model, save_model, ModelError};
use crate::phishtank::parse_phishtank_csv;
use crate::report::{render_report, render_verdict, report_json};
use crate::timestamp::parse_timestamp;
use crate::urllist::parse_url_list;
use crate::Ingested;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_MODEL: i32 = 3;

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "phishnet",
    version,
    about = "Phishing website prediction with a backprop-trained network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelArg {
    Legit,
    Phish,
}

#[derive(Clone, Debug)]
struct Layers(Vec<usize>);

fn parse_layers(s: &str) -> Result<Layers, String> {
    let sizes = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{p}` is not a layer size"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if sizes.len() < 2 {
        return Err("need at least an input and an output layer, e.g. 27,10,1".into());
    }
    if sizes.contains(&0) {
        return Err("layer sizes must be positive".into());
    }
    Ok(Layers(sizes))
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err("expected a positive number".into()),
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err("expected a non-negative number".into()),
    }
}

fn timestamp(s: &str) -> Result<DateTime<Utc>, String> {
    parse_timestamp(s).ok_or_else(|| "expected an ISO-8601 timestamp".into())
}

#[derive(Subcommand)]
enum Command {
    /// Append a PhishTank CSV export to the archive (all rows labelled phish)
    ImportPhishtank {
        csv: PathBuf,
        #[arg(long)]
        archive: PathBuf,
    },
    /// Append a one-URL-per-line list to the archive
    ImportUrls {
        file: PathBuf,
        #[arg(long, value_enum)]
        label: LabelArg,
        #[arg(long)]
        archive: PathBuf,
        #[arg(long, hide = true, value_parser = timestamp)]
        now: Option<DateTime<Utc>>,
    },
    /// Write the feature matrix for every archived record
    Extract {
        #[arg(long)]
        archive: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Drop records older than this many days (no filtering when omitted)
        #[arg(long, value_parser = positive)]
        max_age_days: Option<f64>,
        #[arg(long, hide = true, value_parser = timestamp)]
        now: Option<DateTime<Utc>>,
    },
    /// Train a network on a feature matrix
    Train {
        #[arg(long)]
        features: PathBuf,
        #[arg(long, default_value = "27,10,1", value_parser = parse_layers)]
        layers: Layers,
        #[arg(long, default_value_t = 0.5, value_parser = positive)]
        lr: f64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        epochs: u64,
        #[arg(long, default_value_t = 0.0, value_parser = non_negative)]
        mse_stop: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Keep the file order in every epoch
        #[arg(long)]
        no_shuffle: bool,
    },
    /// Score one URL
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        url: String,
        /// Saved HTML of the page
        #[arg(long, conflicts_with = "fetch")]
        page: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Download the page, headers and certificate before scoring
        #[arg(long)]
        fetch: bool,
        /// Network timeout in seconds for --fetch
        #[arg(long, default_value_t = 10.0, value_parser = positive)]
        timeout: f64,
    },
    /// Score a labelled feature matrix
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        features: PathBuf,
        /// Also write the report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn model_failure(e: ModelError) -> Failure {
    match e {
        ModelError::Io { .. } => fail(EXIT_DATA, e),
        _ => fail(EXIT_MODEL, e),
    }
}

fn classify_failure(context: &str, e: ClassifyError) -> Failure {
    match e {
        ClassifyError::Net(_) | ClassifyError::InputSize { .. } => {
            fail(EXIT_MODEL, format!("{context}: {e}"))
        }
        _ => fail(EXIT_DATA, format!("{context}: {e}")),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn store(
    source: &Path,
    archive: &Path,
    got: Ingested,
    out: &mut String,
    err: &mut String,
) -> Result<(), Failure> {
    for s in &got.skipped {
        let _ = writeln!(err, "warning: {}: {s}", source.display());
    }
    ArchiveStore::new(archive)
        .append(&got.records)
        .map_err(|e| fail(EXIT_DATA, e))?;
    let _ = writeln!(
        out,
        "imported {} records into {} ({} skipped)",
        got.records.len(),
        archive.display(),
        got.skipped.len()
    );
    Ok(())
}

fn execute(command: Command, out: &mut String, err: &mut String) -> Result<(), Failure> {
    match command {
        Command::ImportPhishtank { csv, archive } => {
            let text = read(&csv)?;
            let got = parse_phishtank_csv(&text)
                .map_err(|e| fail(EXIT_DATA, format!("{}: {e}", csv.display())))?;
            store(&csv, &archive, got, out, err)
        }
        Command::ImportUrls {
            file,
            label,
            archive,
            now,
        } => {
            let label = match label {
                LabelArg::Legit => Label::Legit,
                LabelArg::Phish => Label::Phish,
            };
            let got = parse_url_list(&read(&file)?, label, now.unwrap_or_else(Utc::now));
            store(&file, &archive, got, out, err)
        }
        Command::Extract {
            archive,
            config,
            out: dest,
            max_age_days,
            now,
        } => {
            let cfg = load_config(config.as_deref()).map_err(|e| fail(EXIT_DATA, e))?;
            let mut records = ArchiveStore::new(&archive)
                .read_all()
                .map_err(|e| match e {
                    crate::ArchiveError::Corrupt { .. } => {
                        fail(EXIT_DATA, format!("{}: {e}", archive.display()))
                    }
                    crate::ArchiveError::Io { .. } => fail(EXIT_DATA, e),
                })?;
            let before = records.len();
            if let Some(days) = max_age_days {
                records = filter_stale(&records, now.unwrap_or_else(Utc::now), days);
            }
            let text = export_feature_matrix(&records, &cfg).map_err(|e| fail(EXIT_DATA, e))?;
            write(&dest, &text)?;
            let _ = writeln!(
                out,
                "wrote {} rows to {} ({} stale records dropped)",
                records.len(),
                dest.display(),
                before - records.len()
            );
            Ok(())
        }
        Command::Train {
            features,
            layers,
            lr,
            epochs,
            mse_stop,
            seed,
            out: dest,
            no_shuffle,
        } => {
            let data = parse_feature_matrix(&read(&features)?)
                .map_err(|e| fail(EXIT_DATA, format!("{}: {e}", features.display())))?;
            if data.is_empty() {
                return Err(fail(
                    EXIT_DATA,
                    format!("{}: no training rows", features.display()),
                ));
            }
            let mut net = Network::init(&layers.0, seed).map_err(|e| fail(EXIT_USAGE, e))?;
            let cfg = TrainConfig {
                learning_rate: lr,
                max_epochs: epochs as usize,
                mse_stop,
                shuffle: !no_shuffle,
                seed,
            };
            let outcome = net.train(&data, &cfg).map_err(|e| match e {
                NetError::Shape { .. } => fail(
                    EXIT_MODEL,
                    format!(
                        "layers {:?} do not fit {}: {e}",
                        layers.0,
                        features.display()
                    ),
                ),
                _ => fail(EXIT_USAGE, e),
            })?;
            save_model(&net, &BandThresholds::default(), &dest).map_err(model_failure)?;
            let _ = writeln!(
                out,
                "trained {:?} for {} epochs, final mse {:.6}, wrote {}",
                layers.0,
                outcome.epochs(),
                outcome.final_mse().unwrap_or(f64::NAN),
                dest.display()
            );
            Ok(())
        }
        Command::Predict {
            model,
            url,
            page,
            config,
            fetch,
            timeout,
        } => {
            let (net, bands) = load_model(&model).map_err(model_failure)?;
            let cfg = load_config(config.as_deref()).map_err(|e| fail(EXIT_DATA, e))?;
            let record = if fetch {
                fetch_record(&url, Duration::from_secs_f64(timeout))
                    .map_err(|e| fail(EXIT_DATA, e))?
            } else {
                let mut r = WebsiteRecord::new(url.clone(), Utc::now());
                if let Some(p) = page {
                    r.page_source = Some(read(&p)?);
                }
                r
            };
            let verdict =
                classify(&record, &net, &cfg, &bands).map_err(|e| classify_failure(&url, e))?;
            let _ = writeln!(out, "{}", render_verdict(&verdict));
            Ok(())
        }
        Command::Evaluate {
            model,
            features,
            report,
        } => {
            let (net, bands) = load_model(&model).map_err(model_failure)?;
            let data = parse_feature_matrix(&read(&features)?)
                .map_err(|e| fail(EXIT_DATA, format!("{}: {e}", features.display())))?;
            let r = evaluate(&net, &data, &bands).map_err(|e| match e {
                ClassifyError::Empty => fail(EXIT_DATA, format!("{}: {e}", features.display())),
                e => classify_failure(&model.display().to_string(), e),
            })?;
            out.push_str(&render_report(&r));
            if let Some(path) = report {
                write(&path, &report_json(&r))?;
            }
            Ok(())
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut stdout = String::new();
    let mut stderr = String::new();
    let exit_code = match Cli::try_parse_from(args) {
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                stderr = text;
                EXIT_USAGE
            } else {
                stdout = text;
                EXIT_OK
            }
        }
        Ok(cli) => match execute(cli.command, &mut stdout, &mut stderr) {
            Ok(()) => EXIT_OK,
            Err(f) => {
                let _ = writeln!(stderr, "error: {}", f.message);
                f.code
            }
        },
    };
    CommandOutcome {
        exit_code,
        stdout,
        stderr,
    }
}
