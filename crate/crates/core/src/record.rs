use alloc::string::String;
use alloc::vec::Vec;

use chrono::{DateTime, Utc};

/// Binary ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Label {
    Phish,
    Legit,
}

impl Label {
    /// Training target: 1.0 for phish, 0.0 for legit.
    pub const fn target(self) -> f64 {
        match self {
            Self::Phish => 1.0,
            Self::Legit => 0.0,
        }
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Self::Phish => "phish",
            Self::Legit => "legit",
        }
    }
}

impl core::str::FromStr for Label {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.trim().to_ascii_lowercase().as_str() {
            "phish" | "phishing" | "1" => Ok(Self::Phish),
            "legit" | "legitimate" | "0" => Ok(Self::Legit),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CertEvidence {
    pub issuer: String,
    pub subject_common_name: String,
    pub valid: bool,
    pub self_signed: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DnsEvidence {
    pub resolvable: bool,
    pub domain_age_days: Option<f64>,
}

/// One candidate site and whatever evidence was collected about it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WebsiteRecord {
    pub url: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub page_source: Option<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub response_headers: Option<Vec<(String, String)>>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub redirect_chain: Option<Vec<String>>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub cert_evidence: Option<CertEvidence>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub dns_evidence: Option<DnsEvidence>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub lure_text: Option<String>,
    pub observed_at: DateTime<Utc>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub label: Option<Label>,
}

impl WebsiteRecord {
    /// A record carrying only a URL and observation time.
    pub fn new(url: impl Into<String>, observed_at: DateTime<Utc>) -> Self {
        Self {
            url: url.into(),
            page_source: None,
            response_headers: None,
            redirect_chain: None,
            cert_evidence: None,
            dns_evidence: None,
            lure_text: None,
            observed_at,
            label: None,
        }
    }

    pub fn with_label(mut self, label: Label) -> Self {
        self.label = Some(label);
        self
    }

    pub fn with_page(mut self, html: impl Into<String>) -> Self {
        self.page_source = Some(html.into());
        self
    }

    /// Checks the structural invariants: absolute URL with a host, and a
    /// redirect chain (when present) that starts at `url`.
    pub fn validate(&self) -> Result<(), &'static str> {
        crate::url::ParsedUrl::parse(&self.url).map_err(|e| e.reason())?;
        if let Some(chain) = &self.redirect_chain {
            if chain.first() != Some(&self.url) {
                return Err("redirect chain does not start with url");
            }
        }
        Ok(())
    }
}
