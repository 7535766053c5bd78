//! Text and JSON renderings of verdicts and evaluation reports.

use phishnet_core::{Band, EvalReport, PhishVerdict};

/// `score=0.500000 band=Suspicious`
pub fn render_verdict(v: &PhishVerdict) -> String {
    format!("score={:.6} band={}", v.score, v.band.name())
}

pub fn render_report(r: &EvalReport) -> String {
    let mut s = format!(
        "records    {}\naccuracy   {:.6}\nerror_rate {:.6}\ntp {}  fp {}  tn {}  fn {}\nbands\n",
        r.total, r.accuracy, r.error_rate, r.tp, r.fp, r.tn, r.fn_
    );
    for band in Band::ALL {
        s.push_str(&format!("  {:<15} {}\n", band.name(), r.bands.get(band)));
    }
    s
}

/// Pretty JSON with fields in declaration order: total, tp, fp, tn, fn,
/// accuracy, error_rate, bands.
pub fn report_json(r: &EvalReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use phishnet_core::BandHistogram;

    #[test]
    fn verdict_line() {
        let v = PhishVerdict {
            score: 0.5,
            band: Band::Suspicious,
        };
        assert_eq!(render_verdict(&v), "score=0.500000 band=Suspicious");
    }

    #[test]
    fn json_field_order() {
        let mut h = BandHistogram::default();
        h.add(Band::VeryPhishy);
        let r = EvalReport::from_counts(1, 0, 0, 0, h);
        let j = report_json(&r);
        let keys = [
            "\"total\"",
            "\"tp\"",
            "\"fp\"",
            "\"tn\"",
            "\"fn\"",
            "\"accuracy\"",
            "\"error_rate\"",
            "\"bands\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| j.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{j}");
        assert!(render_report(&r).contains("VeryPhishy      1"));
    }
}
