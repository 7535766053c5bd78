//! Tunable thresholds and keyword lists for the indicator rules.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::ConfigError;
use crate::indicator::IndicatorValue;
use crate::suffix::PublicSuffixList;
use crate::text::Dictionary;

/// Word list bundled with the crate for the spelling indicator.
pub const BUNDLED_WORDS: &str = include_str!("../data/words.txt");

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Configuration for [`extract_all`](crate::extract_all).
///
/// Every threshold pair is `(lo, hi)` with `lo < hi`. File keys are the field
/// names below; each threshold also accepts the name of the indicator it tunes
/// (`long_url_address = [54, 75]`).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ExtractionConfig {
    #[cfg_attr(feature = "serde", serde(alias = "long_url_address"))]
    pub url_length_thresholds: (usize, usize),
    #[cfg_attr(feature = "serde", serde(alias = "abnormal_url_of_anchor"))]
    pub external_anchor_ratio_thresholds: (f64, f64),
    #[cfg_attr(feature = "serde", serde(alias = "abnormal_request_url"))]
    pub external_resource_ratio_thresholds: (f64, f64),
    #[cfg_attr(feature = "serde", serde(alias = "spelling_errors"))]
    pub misspelling_ratio_thresholds: (f64, f64),
    #[cfg_attr(feature = "serde", serde(alias = "redirect_pages"))]
    pub redirect_count_thresholds: (usize, usize),
    #[cfg_attr(feature = "serde", serde(alias = "hex_char_codes"))]
    pub hex_escape_path_threshold: usize,
    /// Domains younger than this many days are Doubtful.
    #[cfg_attr(feature = "serde", serde(alias = "abnormal_dns_record"))]
    pub young_domain_days: f64,
    /// Hit counts `(lo, hi)`: 0..lo Legitimate, lo..hi Doubtful, hi.. Phishy.
    #[cfg_attr(feature = "serde", serde(alias = "emphasis_on_security"))]
    pub security_keyword_thresholds: (usize, usize),
    #[cfg_attr(feature = "serde", serde(alias = "certificate_authority"))]
    pub trusted_ca_names: Vec<String>,
    pub brand_tokens: Vec<String>,
    pub security_keywords: Vec<String>,
    #[cfg_attr(feature = "serde", serde(alias = "generic_salutation"))]
    pub generic_salutations: Vec<String>,
    #[cfg_attr(feature = "serde", serde(alias = "buying_time"))]
    pub urgency_phrases: Vec<String>,
    pub mild_urgency_phrases: Vec<String>,
    pub missing_evidence_value: IndicatorValue,
    #[cfg_attr(feature = "serde", serde(with = "dictionary_words"))]
    pub dictionary: Dictionary,
    #[cfg_attr(feature = "serde", serde(skip))]
    pub suffixes: PublicSuffixList,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        Self {
            url_length_thresholds: (54, 75),
            external_anchor_ratio_thresholds: (0.31, 0.67),
            external_resource_ratio_thresholds: (0.22, 0.61),
            misspelling_ratio_thresholds: (0.01, 0.03),
            redirect_count_thresholds: (1, 3),
            hex_escape_path_threshold: 5,
            young_domain_days: 180.0,
            security_keyword_thresholds: (1, 3),
            trusted_ca_names: strings(&[
                "digicert",
                "sectigo",
                "comodo",
                "globalsign",
                "let's encrypt",
                "isrg",
                "godaddy",
                "entrust",
                "geotrust",
                "thawte",
                "verisign",
                "symantec",
                "amazon",
                "google trust services",
                "microsoft",
                "identrust",
                "certum",
                "buypass",
                "actalis",
                "quovadis",
                "emudhra",
                "(n)code solutions",
                "safescrypt",
                "idrbt",
            ]),
            brand_tokens: strings(&[
                "sbi",
                "onlinesbi",
                "hdfc",
                "hdfcbank",
                "icici",
                "icicibank",
                "axisbank",
                "kotak",
                "paypal",
                "amazon",
                "apple",
                "microsoft",
                "google",
                "facebook",
                "netflix",
                "ebay",
                "chase",
                "wellsfargo",
                "citibank",
                "hsbc",
                "barclays",
                "yahoo",
                "outlook",
                "dropbox",
                "linkedin",
                "instagram",
                "whatsapp",
            ]),
            security_keywords: strings(&[
                "secure",
                "security",
                "verify",
                "verification",
                "confirm your",
                "authenticate",
                "ssl",
                "encrypted",
                "encryption",
                "protected",
                "safeguard",
                "unauthorized",
                "unusual activity",
                "suspicious activity",
                "fraud",
            ]),
            generic_salutations: strings(&[
                "dear customer",
                "dear valued customer",
                "dear client",
                "dear user",
                "dear member",
                "dear account holder",
                "dear account owner",
                "dear sir",
                "dear madam",
                "dear sir/madam",
                "dear sir or madam",
                "dear friend",
                "dear beneficiary",
                "dear cardholder",
                "dear card holder",
                "dear netbanking user",
                "dear internet banking user",
                "hello customer",
                "greetings customer",
            ]),
            urgency_phrases: strings(&[
                "immediately",
                "urgent",
                "urgently",
                "within 12 hours",
                "within 24 hours",
                "within 48 hours",
                "account will be suspended",
                "account will be closed",
                "account will be locked",
                "will be deactivated",
                "expires today",
                "act now",
                "final notice",
                "last warning",
                "limited time",
            ]),
            mild_urgency_phrases: strings(&[
                "soon",
                "shortly",
                "promptly",
                "as soon as possible",
                "at your earliest convenience",
            ]),
            missing_evidence_value: IndicatorValue::Doubtful,
            dictionary: Dictionary::new(BUNDLED_WORDS.lines()),
            suffixes: PublicSuffixList::bundled(),
        }
    }
}

impl ExtractionConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        fn pair<T: PartialOrd + Into<f64> + Copy>(
            name: &'static str,
            (lo, hi): (T, T),
        ) -> Result<(), ConfigError> {
            if lo < hi {
                Ok(())
            } else {
                Err(ConfigError::ThresholdOrder {
                    name,
                    lo: lo.into(),
                    hi: hi.into(),
                })
            }
        }
        let as_f = |(a, b): (usize, usize)| (a as f64, b as f64);
        pair("url_length_thresholds", as_f(self.url_length_thresholds))?;
        pair(
            "external_anchor_ratio_thresholds",
            self.external_anchor_ratio_thresholds,
        )?;
        pair(
            "external_resource_ratio_thresholds",
            self.external_resource_ratio_thresholds,
        )?;
        pair(
            "misspelling_ratio_thresholds",
            self.misspelling_ratio_thresholds,
        )?;
        pair(
            "redirect_count_thresholds",
            as_f(self.redirect_count_thresholds),
        )?;
        pair(
            "security_keyword_thresholds",
            as_f(self.security_keyword_thresholds),
        )?;

        let lists: [(&'static str, &Vec<String>); 6] = [
            ("trusted_ca_names", &self.trusted_ca_names),
            ("brand_tokens", &self.brand_tokens),
            ("security_keywords", &self.security_keywords),
            ("generic_salutations", &self.generic_salutations),
            ("urgency_phrases", &self.urgency_phrases),
            ("mild_urgency_phrases", &self.mild_urgency_phrases),
        ];
        for (name, list) in lists {
            if list.iter().any(|s| s.to_lowercase() != *s) {
                return Err(ConfigError::NotLowercase(name));
            }
        }
        Ok(())
    }
}

#[cfg(feature = "serde")]
mod dictionary_words {
    use alloc::string::String;
    use alloc::vec::Vec;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::text::Dictionary;

    pub fn serialize<S: Serializer>(d: &Dictionary, s: S) -> Result<S::Ok, S::Error> {
        d.iter().collect::<Vec<&str>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Dictionary, D::Error> {
        Ok(Dictionary::new(Vec::<String>::deserialize(d)?))
    }
}
