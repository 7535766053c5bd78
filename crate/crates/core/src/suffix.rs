//! Registered-domain computation against a public suffix rule list.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::ConfigError;
use crate::url::is_ip_literal;

/// The snapshot bundled with the crate.
pub const BUNDLED_SNAPSHOT: &str = include_str!("../data/public_suffix_list.dat");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicSuffixList {
    rules: BTreeSet<String>,
    wildcards: BTreeSet<String>,
    exceptions: BTreeSet<String>,
}

impl Default for PublicSuffixList {
    fn default() -> Self {
        Self::bundled()
    }
}

impl PublicSuffixList {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_SNAPSHOT).expect("bundled suffix snapshot is well formed")
    }

    /// Parses the newline-delimited publicsuffix.org format.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut list = Self {
            rules: BTreeSet::new(),
            wildcards: BTreeSet::new(),
            exceptions: BTreeSet::new(),
        };
        for line in text.lines() {
            let rule = line.split_whitespace().next().unwrap_or("");
            if rule.is_empty() || rule.starts_with("//") {
                continue;
            }
            let rule = rule.to_ascii_lowercase();
            if let Some(e) = rule.strip_prefix('!') {
                check_labels(e, line)?;
                list.exceptions.insert(e.to_string());
            } else if let Some(w) = rule.strip_prefix("*.") {
                check_labels(w, line)?;
                list.wildcards.insert(w.to_string());
            } else {
                check_labels(&rule, line)?;
                list.rules.insert(rule);
            }
        }
        Ok(list)
    }

    pub fn len(&self) -> usize {
        self.rules.len() + self.wildcards.len() + self.exceptions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of trailing labels of `host` that form its public suffix.
    fn suffix_labels(&self, labels: &[&str]) -> usize {
        let n = labels.len();
        let mut best = 1; // implicit "*"
        for take in 1..=n {
            let candidate = labels[n - take..].join(".");
            if self.exceptions.contains(&candidate) {
                return take - 1;
            }
            if self.rules.contains(&candidate) {
                best = best.max(take);
            }
            if take < n && self.wildcards.contains(&candidate) {
                best = best.max(take + 1);
            }
        }
        best
    }

    /// Public suffix of a lowercased hostname.
    pub fn public_suffix(&self, host: &str) -> Option<String> {
        let labels = host_labels(host)?;
        let k = self.suffix_labels(&labels).min(labels.len());
        Some(labels[labels.len() - k..].join("."))
    }

    /// The registered domain (public suffix plus one label). `None` for IP
    /// literals, empty hosts and hosts that are themselves a public suffix.
    pub fn registered_domain(&self, host: &str) -> Option<String> {
        let labels = host_labels(host)?;
        let k = self.suffix_labels(&labels);
        (labels.len() > k).then(|| labels[labels.len() - k - 1..].join("."))
    }

    /// The single label left of the public suffix, e.g. `onlinesbi` for `www.onlinesbi.com`.
    pub fn registered_label(&self, host: &str) -> Option<String> {
        let labels = host_labels(host)?;
        let k = self.suffix_labels(&labels);
        (labels.len() > k).then(|| labels[labels.len() - k - 1].to_string())
    }

    /// Registered domain, falling back to the whole host for IP literals and bare suffixes.
    pub fn site_key(&self, host: &str) -> String {
        self.registered_domain(host)
            .unwrap_or_else(|| host.to_ascii_lowercase())
    }
}

fn check_labels(rule: &str, line: &str) -> Result<(), ConfigError> {
    if rule.is_empty()
        || rule
            .split('.')
            .any(|l| l.is_empty() || l.contains(['*', '!']))
    {
        return Err(ConfigError::SuffixRule(line.trim().to_string()));
    }
    Ok(())
}

fn host_labels(host: &str) -> Option<Vec<&str>> {
    let host = host.trim_end_matches('.');
    if host.is_empty() || is_ip_literal(host) || host.starts_with('[') {
        return None;
    }
    let labels: Vec<&str> = host.split('.').collect();
    if labels.iter().any(|l| l.is_empty()) {
        return None;
    }
    Some(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registered_domains() {
        let psl = PublicSuffixList::bundled();
        let cases = [
            ("www.onlinesbi.com", Some("onlinesbi.com")),
            ("www.sbionline.com", Some("sbionline.com")),
            ("a.b.example.co.uk", Some("example.co.uk")),
            ("retail.onlinesbi.co.in", Some("onlinesbi.co.in")),
            ("com", None),
            ("co.uk", None),
            ("bar.sch.uk", None),
            ("foo.bar.sch.uk", Some("foo.bar.sch.uk")),
            ("www.city.kawasaki.jp", Some("city.kawasaki.jp")),
            ("phish.github.io", Some("phish.github.io")),
            ("intranet.unknowntld", Some("intranet.unknowntld")),
            ("10.0.0.1", None),
        ];
        for (host, want) in cases {
            assert_eq!(psl.registered_domain(host).as_deref(), want, "{host}");
        }
        assert_eq!(
            psl.registered_label("www.onlinesbi.com").as_deref(),
            Some("onlinesbi")
        );
        assert_eq!(
            psl.public_suffix("a.example.co.in").as_deref(),
            Some("co.in")
        );
        assert_eq!(psl.site_key("10.0.0.1"), "10.0.0.1");
    }

    #[test]
    fn rejects_bad_rules() {
        assert!(PublicSuffixList::parse("com\n*.*.bad\n").is_err());
        assert!(PublicSuffixList::parse("a..b").is_err());
        let psl = PublicSuffixList::parse("// only comments\n\n").unwrap();
        assert!(psl.is_empty());
        assert_eq!(
            psl.registered_domain("www.example.com").as_deref(),
            Some("example.com")
        );
    }
}
