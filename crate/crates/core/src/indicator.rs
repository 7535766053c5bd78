//! The ternary alphabet and the catalogue of the 27 phishing indicators.

use core::fmt;

use crate::error::ExtractError;

pub const INDICATOR_COUNT: usize = 27;

/// Ternary value of a single indicator. Ordered from least to most suspicious.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum IndicatorValue {
    Legitimate,
    Doubtful,
    Phishy,
}

impl IndicatorValue {
    pub const ALL: [IndicatorValue; 3] = [Self::Legitimate, Self::Doubtful, Self::Phishy];

    /// Network input encoding: 0.0, 0.5 and 1.0.
    pub const fn encode(self) -> f64 {
        match self {
            Self::Legitimate => 0.0,
            Self::Doubtful => 0.5,
            Self::Phishy => 1.0,
        }
    }

    /// Inverse of [`encode`](Self::encode); only the three exact encodings are accepted.
    pub fn decode(x: f64) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.encode() == x)
    }
}

/// Free-function form of [`IndicatorValue::encode`].
pub const fn encode_value(v: IndicatorValue) -> f64 {
    v.encode()
}

/// The six groups the indicators are clustered into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    UrlDomainIdentity,
    SecurityEncryption,
    SourceCodeJavaScript,
    PageStyleContents,
    WebAddressBar,
    SocialHumanFactor,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Self::UrlDomainIdentity,
        Self::SecurityEncryption,
        Self::SourceCodeJavaScript,
        Self::PageStyleContents,
        Self::WebAddressBar,
        Self::SocialHumanFactor,
    ];

    pub const fn title(self) -> &'static str {
        match self {
            Self::UrlDomainIdentity => "URL & Domain Identity",
            Self::SecurityEncryption => "Security & Encryption",
            Self::SourceCodeJavaScript => "Source Code & JavaScript",
            Self::PageStyleContents => "Page Style & Contents",
            Self::WebAddressBar => "Web Address Bar",
            Self::SocialHumanFactor => "Social Human Factor",
        }
    }
}

macro_rules! indicators {
    ($( $variant:ident => ($name:literal, $criterion:ident, $row:literal, $title:literal), )*) => {
        /// One of the 27 indicators, declared in canonical order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum IndicatorId {
            $( $variant, )*
        }

        impl IndicatorId {
            pub const ALL: [IndicatorId; INDICATOR_COUNT] = [ $( IndicatorId::$variant, )* ];

            /// Stable snake_case identifier used in config files and CSV headers.
            pub const fn name(self) -> &'static str {
                match self { $( IndicatorId::$variant => $name, )* }
            }

            pub const fn criterion(self) -> Criterion {
                match self { $( IndicatorId::$variant => Criterion::$criterion, )* }
            }

            /// 1-based row number within the criterion.
            pub const fn row(self) -> u8 {
                match self { $( IndicatorId::$variant => $row, )* }
            }

            pub const fn title(self) -> &'static str {
                match self { $( IndicatorId::$variant => $title, )* }
            }
        }
    };
}

indicators! {
    UsingIpAddress => ("using_ip_address", UrlDomainIdentity, 1, "Using IP address"),
    AbnormalRequestUrl => ("abnormal_request_url", UrlDomainIdentity, 2, "Abnormal request URL"),
    AbnormalUrlOfAnchor => ("abnormal_url_of_anchor", UrlDomainIdentity, 3, "Abnormal URL of anchor"),
    AbnormalDnsRecord => ("abnormal_dns_record", UrlDomainIdentity, 4, "Abnormal DNS record"),
    AbnormalUrl => ("abnormal_url", UrlDomainIdentity, 5, "Abnormal URL"),
    SslCertificate => ("ssl_certificate", SecurityEncryption, 1, "Using SSL certificate"),
    CertificateAuthority => ("certificate_authority", SecurityEncryption, 2, "Certificate authority"),
    AbnormalCookie => ("abnormal_cookie", SecurityEncryption, 3, "Abnormal cookie"),
    DistinguishedNamesCertificate => ("distinguished_names_certificate", SecurityEncryption, 4, "Distinguished names certificate"),
    RedirectPages => ("redirect_pages", SourceCodeJavaScript, 1, "Redirect pages"),
    StraddlingAttack => ("straddling_attack", SourceCodeJavaScript, 2, "Straddling attack"),
    PharmingAttack => ("pharming_attack", SourceCodeJavaScript, 3, "Pharming attack"),
    OnmouseoverHideLink => ("onmouseover_hide_link", SourceCodeJavaScript, 4, "OnMouseOver to hide the link"),
    ServerFormHandler => ("server_form_handler", SourceCodeJavaScript, 5, "Server form handler"),
    SpellingErrors => ("spelling_errors", PageStyleContents, 1, "Spelling errors"),
    CopyingWebsite => ("copying_website", PageStyleContents, 2, "Copying website"),
    FormsWithSubmit => ("forms_with_submit", PageStyleContents, 3, "Using forms with Submit button"),
    PopupWindows => ("popup_windows", PageStyleContents, 4, "Using pop-up windows"),
    DisablingRightClick => ("disabling_right_click", PageStyleContents, 5, "Disabling right click"),
    LongUrlAddress => ("long_url_address", WebAddressBar, 1, "Long url address"),
    ReplacingSimilarChar => ("replacing_similar_char", WebAddressBar, 2, "Replacing similar char for URL"),
    PrefixSuffix => ("prefix_suffix", WebAddressBar, 3, "Adding a prefix or suffix"),
    AtSymbol => ("at_symbol", WebAddressBar, 4, "Using the @ symbol to confuse"),
    HexCharCodes => ("hex_char_codes", WebAddressBar, 5, "Using the hexadecimal char codes"),
    EmphasisOnSecurity => ("emphasis_on_security", SocialHumanFactor, 1, "Emphasis on security"),
    GenericSalutation => ("generic_salutation", SocialHumanFactor, 2, "Public generation salutation"),
    BuyingTime => ("buying_time", SocialHumanFactor, 3, "Buying time to access accounts"),
}

impl IndicatorId {
    /// Position in the canonical 27-slot order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_name(name: &str) -> Result<Self, ExtractError> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == name)
            .ok_or_else(|| ExtractError::UnknownIndicator(name.into()))
    }

    /// Evidence fields of a [`WebsiteRecord`](crate::WebsiteRecord) the rule reads.
    pub fn evidence(self) -> &'static [Evidence] {
        use Evidence::*;
        use IndicatorId::*;
        match self {
            UsingIpAddress | LongUrlAddress | PrefixSuffix | AtSymbol | HexCharCodes
            | ReplacingSimilarChar => &[Url],
            AbnormalRequestUrl | AbnormalUrlOfAnchor | AbnormalUrl | StraddlingAttack
            | PharmingAttack | OnmouseoverHideLink | ServerFormHandler | CopyingWebsite
            | FormsWithSubmit | PopupWindows | DisablingRightClick => &[Url, PageSource],
            AbnormalDnsRecord => &[Url, Dns],
            SslCertificate | CertificateAuthority | DistinguishedNamesCertificate => {
                &[Url, Certificate]
            }
            AbnormalCookie => &[Url, Headers],
            RedirectPages => &[Url, PageSource, RedirectChain],
            SpellingErrors | EmphasisOnSecurity | BuyingTime => &[Url, PageSource, LureText],
            GenericSalutation => &[Url, LureText],
        }
    }
}

impl fmt::Display for IndicatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Record fields an indicator may depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    Url,
    PageSource,
    Headers,
    RedirectChain,
    Certificate,
    Dns,
    LureText,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_is_fixed_and_increasing() {
        assert_eq!(encode_value(IndicatorValue::Legitimate), 0.0);
        assert_eq!(encode_value(IndicatorValue::Doubtful), 0.5);
        assert_eq!(encode_value(IndicatorValue::Phishy), 1.0);
        for w in IndicatorValue::ALL.windows(2) {
            assert!(w[0] < w[1]);
            assert!(w[0].encode() < w[1].encode());
        }
        for v in IndicatorValue::ALL {
            assert_eq!(IndicatorValue::decode(v.encode()), Some(v));
        }
        assert_eq!(IndicatorValue::decode(0.25), None);
    }

    #[test]
    fn catalogue_partition_matches_criteria_rows() {
        let counts: Vec<usize> = Criterion::ALL
            .iter()
            .map(|c| {
                IndicatorId::ALL
                    .iter()
                    .filter(|i| i.criterion() == *c)
                    .count()
            })
            .collect();
        assert_eq!(counts, [5, 4, 5, 5, 5, 3]);

        // canonical order walks the criteria in order with rows 1..n
        let mut prev: Option<IndicatorId> = None;
        for (i, id) in IndicatorId::ALL.iter().enumerate() {
            assert_eq!(id.index(), i);
            match prev {
                Some(p) if p.criterion() == id.criterion() => assert_eq!(id.row(), p.row() + 1),
                Some(p) => {
                    assert!(p.criterion() < id.criterion());
                    assert_eq!(id.row(), 1);
                }
                None => assert_eq!(id.row(), 1),
            }
            prev = Some(*id);
        }
    }

    #[test]
    fn names_are_unique_and_resolvable() {
        for id in IndicatorId::ALL {
            assert_eq!(IndicatorId::from_name(id.name()), Ok(id));
            assert!(id
                .name()
                .bytes()
                .all(|b| b.is_ascii_lowercase() || b == b'_'));
        }
        assert!(matches!(
            IndicatorId::from_name("using_ftp"),
            Err(ExtractError::UnknownIndicator(_))
        ));
    }
}
