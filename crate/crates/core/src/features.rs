//! Evaluation of the 27 ternary indicators.
//!
//! Each rule reads only the record fields listed by [`IndicatorId::evidence`].
//! A rule whose evidence is absent yields `cfg.missing_evidence_value`, except
//! the purely lexical URL rules, which always have their evidence.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::config::ExtractionConfig;
use crate::error::ExtractError;
use crate::html::Page;
use crate::indicator::{IndicatorId, IndicatorValue, INDICATOR_COUNT};
use crate::record::WebsiteRecord;
use crate::text::{confusable_skeleton, count_phrase};
use crate::url::{
    classify_reference, count_percent_escapes, punycode_decode, LinkTarget, ParsedUrl,
};

use IndicatorValue::{Doubtful, Legitimate, Phishy};

/// The 27 indicator values of one record, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FeatureVector {
    values: [IndicatorValue; INDICATOR_COUNT],
}

impl FeatureVector {
    pub const fn new(values: [IndicatorValue; INDICATOR_COUNT]) -> Self {
        Self { values }
    }

    pub const fn values(&self) -> &[IndicatorValue; INDICATOR_COUNT] {
        &self.values
    }

    pub fn get(&self, id: IndicatorId) -> IndicatorValue {
        self.values[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndicatorId, IndicatorValue)> + '_ {
        IndicatorId::ALL.into_iter().zip(self.values)
    }

    /// Numeric network input, each slot in {0.0, 0.5, 1.0}.
    pub fn encode(&self) -> [f64; INDICATOR_COUNT] {
        self.values.map(IndicatorValue::encode)
    }

    /// Inverse of [`encode`](Self::encode). `None` unless every entry is an exact encoding.
    pub fn decode(encoded: &[f64]) -> Option<Self> {
        if encoded.len() != INDICATOR_COUNT {
            return None;
        }
        let mut values = [Legitimate; INDICATOR_COUNT];
        for (slot, x) in values.iter_mut().zip(encoded) {
            *slot = IndicatorValue::decode(*x)?;
        }
        Some(Self { values })
    }
}

/// Per-record state shared by all rules: the parsed URL, site identity and the lazily scanned page.
struct Site<'a> {
    record: &'a WebsiteRecord,
    cfg: &'a ExtractionConfig,
    url: ParsedUrl<'a>,
    host: String,
    /// Registered domain, or the host itself for IP literals.
    site: String,
    /// Label left of the public suffix, or the host for IP literals.
    label: String,
    page: OnceCell<Option<Page>>,
}

impl<'a> Site<'a> {
    fn new(
        record: &'a WebsiteRecord,
        cfg: &'a ExtractionConfig,
        id: IndicatorId,
    ) -> Result<Self, ExtractError> {
        let url = ParsedUrl::parse(&record.url).map_err(|e| ExtractError::InvalidUrl {
            indicator: id,
            url: record.url.clone(),
            reason: e.reason(),
        })?;
        let host = url.host();
        let site = cfg.suffixes.site_key(&host);
        let label = cfg
            .suffixes
            .registered_label(&host)
            .unwrap_or_else(|| host.clone());
        Ok(Self {
            record,
            cfg,
            url,
            host,
            site,
            label,
            page: OnceCell::new(),
        })
    }

    fn page(&self) -> Option<&Page> {
        self.page
            .get_or_init(|| self.record.page_source.as_deref().map(Page::parse))
            .as_ref()
    }

    fn missing(&self) -> IndicatorValue {
        self.cfg.missing_evidence_value
    }

    /// `Some(true)` for an off-site reference, `Some(false)` for same-site, `None` for null/other schemes.
    fn is_external(&self, reference: &str) -> Option<bool> {
        match classify_reference(reference) {
            LinkTarget::Host(h) => Some(self.cfg.suffixes.site_key(&h) != self.site),
            LinkTarget::Relative => Some(false),
            LinkTarget::Null | LinkTarget::OtherScheme => None,
        }
    }

    fn is_brand_domain(&self) -> bool {
        self.cfg.brand_tokens.contains(&self.label)
    }

    fn evaluate(&self, id: IndicatorId) -> IndicatorValue {
        use IndicatorId::*;
        match id {
            UsingIpAddress => self.using_ip_address(),
            AbnormalRequestUrl => self.abnormal_request_url(),
            AbnormalUrlOfAnchor => self.abnormal_url_of_anchor(),
            AbnormalDnsRecord => self.abnormal_dns_record(),
            AbnormalUrl => self.abnormal_url(),
            SslCertificate => self.ssl_certificate(),
            CertificateAuthority => self.certificate_authority(),
            AbnormalCookie => self.abnormal_cookie(),
            DistinguishedNamesCertificate => self.distinguished_names_certificate(),
            RedirectPages => self.redirect_pages(),
            StraddlingAttack => self.straddling_attack(),
            PharmingAttack => self.pharming_attack(),
            OnmouseoverHideLink => self.onmouseover_hide_link(),
            ServerFormHandler => self.server_form_handler(),
            SpellingErrors => self.spelling_errors(),
            CopyingWebsite => self.copying_website(),
            FormsWithSubmit => self.forms_with_submit(),
            PopupWindows => self.popup_windows(),
            DisablingRightClick => self.disabling_right_click(),
            LongUrlAddress => url_length_rule(&self.record.url, self.cfg),
            ReplacingSimilarChar => self.replacing_similar_char(),
            PrefixSuffix => self.prefix_suffix(),
            AtSymbol => at_symbol_rule(&self.record.url),
            HexCharCodes => self.hex_char_codes(),
            EmphasisOnSecurity => self.emphasis_on_security(),
            GenericSalutation => self.generic_salutation(),
            BuyingTime => self.buying_time(),
        }
    }

    // URL & domain identity

    fn using_ip_address(&self) -> IndicatorValue {
        if self.url.is_ip_host() {
            Phishy
        } else {
            Legitimate
        }
    }

    fn abnormal_request_url(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let total = page.resources.len();
        let external = page
            .resources
            .iter()
            .filter(|r| self.is_external(&r.url) == Some(true))
            .count();
        let (lo, hi) = self.cfg.external_resource_ratio_thresholds;
        ratio_band(external, total, lo, hi)
    }

    fn abnormal_url_of_anchor(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let total = page.anchors.len();
        let abnormal = page
            .anchors
            .iter()
            .filter(|a| {
                classify_reference(&a.href) == LinkTarget::Null
                    || self.is_external(&a.href) == Some(true)
            })
            .count();
        let (lo, hi) = self.cfg.external_anchor_ratio_thresholds;
        ratio_band(abnormal, total, lo, hi)
    }

    fn abnormal_dns_record(&self) -> IndicatorValue {
        match &self.record.dns_evidence {
            None => self.missing(),
            Some(d) if !d.resolvable => Phishy,
            Some(d) => match d.domain_age_days {
                Some(age) if age < self.cfg.young_domain_days => Doubtful,
                _ => Legitimate,
            },
        }
    }

    fn abnormal_url(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let claimed = brand_mentions(&page.title, &self.cfg.brand_tokens);
        if claimed.is_empty() {
            return Legitimate;
        }
        if self.url.is_ip_host() {
            return Phishy;
        }
        if claimed.iter().any(|b| **b == self.label) {
            Legitimate
        } else if claimed
            .iter()
            .any(|b| self.label.contains(b.as_str()) || b.contains(self.label.as_str()))
        {
            Doubtful
        } else {
            Phishy
        }
    }

    // Security & encryption

    fn ssl_certificate(&self) -> IndicatorValue {
        if !self.url.is_https() {
            return Phishy;
        }
        match &self.record.cert_evidence {
            Some(c) if c.valid && !c.self_signed => Legitimate,
            _ => Doubtful,
        }
    }

    fn certificate_authority(&self) -> IndicatorValue {
        let Some(cert) = &self.record.cert_evidence else {
            return self.missing();
        };
        if cert.self_signed {
            return Phishy;
        }
        let issuer = cert.issuer.to_lowercase();
        if self
            .cfg
            .trusted_ca_names
            .iter()
            .any(|ca| issuer.contains(ca.as_str()))
        {
            Legitimate
        } else {
            Doubtful
        }
    }

    fn abnormal_cookie(&self) -> IndicatorValue {
        let Some(headers) = &self.record.response_headers else {
            return self.missing();
        };
        let foreign = headers
            .iter()
            .filter(|(name, _)| name.trim().eq_ignore_ascii_case("set-cookie"))
            .filter_map(|(_, value)| cookie_domain(value))
            .any(|domain| !host_within(&self.host, &domain));
        if foreign {
            Phishy
        } else {
            Legitimate
        }
    }

    fn distinguished_names_certificate(&self) -> IndicatorValue {
        let Some(cert) = &self.record.cert_evidence else {
            return self.missing();
        };
        let cn = cert
            .subject_common_name
            .trim()
            .trim_end_matches('.')
            .to_lowercase();
        if cn_matches(&cn, &self.host) {
            return Legitimate;
        }
        let base = cn.strip_prefix("*.").unwrap_or(&cn);
        if !base.is_empty() && self.cfg.suffixes.site_key(base) == self.site {
            Doubtful
        } else {
            Phishy
        }
    }

    // Source code & JavaScript

    fn redirect_pages(&self) -> IndicatorValue {
        let chain = self.record.redirect_chain.as_ref();
        let page = self.page();
        if chain.is_none() && page.is_none() {
            return self.missing();
        }
        let mut count = chain.map_or(0, |c| c.len().saturating_sub(1));
        if let Some(page) = page {
            count += page.meta_refresh;
            count += script_chunks(page)
                .map(|code| location_writes(&code))
                .sum::<usize>();
        }
        let (lo, hi) = self.cfg.redirect_count_thresholds;
        if count <= lo {
            Legitimate
        } else if count <= hi {
            Doubtful
        } else {
            Phishy
        }
    }

    fn straddling_attack(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let external_frame = page
            .frames
            .iter()
            .any(|f| self.is_external(f) == Some(true));
        if !external_frame {
            return Legitimate;
        }
        let local_credentials = page.forms.iter().any(|f| {
            f.has_password()
                && f.action
                    .as_deref()
                    .is_none_or(|a| self.is_external(a) != Some(true))
        });
        if local_credentials {
            Phishy
        } else {
            Doubtful
        }
    }

    fn pharming_attack(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let mut worst = Legitimate;
        for a in &page.anchors {
            let Some((shown_scheme, shown_host)) = url_like_text(&a.text) else {
                continue;
            };
            let (href_scheme, href_host) = match classify_reference(&a.href) {
                LinkTarget::Host(h) => {
                    let scheme = ParsedUrl::parse(a.href.trim()).ok().map(|u| u.scheme());
                    (scheme, h)
                }
                LinkTarget::Relative => (Some(self.url.scheme()), self.host.clone()),
                LinkTarget::Null | LinkTarget::OtherScheme => continue,
            };
            if strip_www(&shown_host) != strip_www(&href_host) {
                return Phishy;
            }
            if let (Some(s), Some(h)) = (shown_scheme, href_scheme) {
                if s != h {
                    worst = Doubtful;
                }
            }
        }
        worst
    }

    fn onmouseover_hide_link(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let hides = |code: &str| {
            let c = squash(code);
            c.contains("window.status")
                || c.contains("status=")
                || c.contains(".href=")
                || c.contains("location")
        };
        let mut worst = Legitimate;
        for a in &page.anchors {
            if let Some(handler) = &a.onmouseover {
                if hides(handler) {
                    return Phishy;
                }
                worst = Doubtful;
            }
        }
        if page.scripts.iter().any(|s| {
            let c = squash(s);
            c.contains("onmouseover") && c.contains("window.status")
        }) {
            return Phishy;
        }
        worst
    }

    fn server_form_handler(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let mut worst = Legitimate;
        for f in &page.forms {
            let Some(action) = f.action.as_deref() else {
                continue;
            };
            let a = action.trim();
            if a.is_empty() || a.eq_ignore_ascii_case("about:blank") {
                return Phishy;
            }
            if self.is_external(a) == Some(true) {
                worst = Doubtful;
            }
        }
        worst
    }

    // Page style & contents

    fn spelling_errors(&self) -> IndicatorValue {
        let page = self.page();
        let lure = self.record.lure_text.as_deref();
        if page.is_none() && lure.is_none() {
            return self.missing();
        }
        let (mut bad, mut total) = (0, 0);
        let mut tally = |text: &str| {
            let (b, t) = self.cfg.dictionary.misspelling_counts(text);
            bad += b;
            total += t;
        };
        if let Some(p) = page {
            tally(&p.title);
            tally(&p.body_text);
        }
        if let Some(l) = lure {
            tally(l);
        }
        if total == 0 {
            return Legitimate;
        }
        let ratio = bad as f64 / total as f64;
        let (lo, hi) = self.cfg.misspelling_ratio_thresholds;
        if ratio <= lo {
            Legitimate
        } else if ratio <= hi {
            Doubtful
        } else {
            Phishy
        }
    }

    fn copying_website(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        if self.is_brand_domain() {
            return Legitimate;
        }
        if !brand_mentions(&page.title, &self.cfg.brand_tokens).is_empty() {
            Phishy
        } else if !brand_mentions(&page.body_text, &self.cfg.brand_tokens).is_empty() {
            Doubtful
        } else {
            Legitimate
        }
    }

    fn forms_with_submit(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let mut worst = Legitimate;
        for f in &page.forms {
            if f.has_password() {
                let action = f.action.as_deref().map(str::trim).unwrap_or("");
                let off_site = self.is_external(action) == Some(true);
                let plain_http = match ParsedUrl::parse(action) {
                    Ok(u) => !u.is_https(),
                    Err(_) => !self.url.is_https(),
                };
                if off_site || plain_http {
                    return Phishy;
                }
            }
            if f.has_text_entry() && f.has_submit {
                worst = Doubtful;
            }
        }
        worst
    }

    fn popup_windows(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let mut worst = Legitimate;
        for code in script_chunks(page) {
            if code.contains("window.open(") {
                if code.contains("<input") || code.contains("prompt(") {
                    return Phishy;
                }
                worst = Doubtful;
            }
        }
        worst
    }

    fn disabling_right_click(&self) -> IndicatorValue {
        let Some(page) = self.page() else {
            return self.missing();
        };
        let mut handlers: Vec<String> = Vec::new();
        for (name, value) in &page.handlers {
            let v = squash(value);
            if name == "oncontextmenu" || mentions_right_button(&v) {
                handlers.push(v);
            }
        }
        for s in &page.scripts {
            let v = squash(s);
            if v.contains("contextmenu") || mentions_right_button(&v) {
                handlers.push(v);
            }
        }
        let mut worst = Legitimate;
        for h in &handlers {
            if h.contains("returnfalse") || h.contains("preventdefault") {
                return Phishy;
            }
            if h.contains("alert(") {
                worst = Doubtful;
            }
        }
        worst
    }

    // Web address bar

    fn replacing_similar_char(&self) -> IndicatorValue {
        if self.url.is_ip_host() {
            return Legitimate;
        }
        let mut worst = Legitimate;
        for raw in self.name_labels() {
            let (label, puny) = match raw.strip_prefix("xn--") {
                Some(body) => (
                    punycode_decode(body).unwrap_or_else(|| raw.to_string()),
                    true,
                ),
                None => (raw.to_string(), false),
            };
            let skeleton = confusable_skeleton(&label);
            for brand in &self.cfg.brand_tokens {
                if label.contains(brand.as_str()) {
                    continue;
                }
                let b = confusable_skeleton(brand);
                let lookalike = skeleton == b
                    || (brand.chars().count() >= 4
                        && skeleton.split('-').any(|part| part.contains(b.as_str())));
                if lookalike {
                    return Phishy;
                }
            }
            if puny {
                worst = Doubtful;
            }
        }
        worst
    }

    fn prefix_suffix(&self) -> IndicatorValue {
        if self.url.is_ip_host() {
            return Legitimate;
        }
        let mut worst = Legitimate;
        for label in self.name_labels() {
            if !label.contains('-') {
                continue;
            }
            if hyphen_touches_brand(label, &self.cfg.brand_tokens) {
                return Phishy;
            }
            worst = Doubtful;
        }
        worst
    }

    fn hex_char_codes(&self) -> IndicatorValue {
        hex_rule(self.url.raw_host(), self.url.path_and_query(), self.cfg)
    }

    /// Host labels left of the public suffix (subdomains and the registered label).
    fn name_labels(&self) -> Vec<&str> {
        let suffix_len = self
            .cfg
            .suffixes
            .public_suffix(&self.host)
            .map_or(0, |s| s.len());
        let keep = self.host.len().saturating_sub(suffix_len).saturating_sub(1);
        if keep == 0 {
            return Vec::new();
        }
        self.host[..keep]
            .split('.')
            .filter(|l| !l.is_empty())
            .collect()
    }

    // Social human factor

    fn social_text(&self) -> Option<String> {
        let page = self.page();
        let lure = self.record.lure_text.as_deref();
        if page.is_none() && lure.is_none() {
            return None;
        }
        let mut text = String::new();
        if let Some(l) = lure {
            text.push_str(l);
            text.push('\n');
        }
        if let Some(p) = page {
            text.push_str(&p.title);
            text.push('\n');
            text.push_str(&p.body_text);
        }
        Some(text)
    }

    fn emphasis_on_security(&self) -> IndicatorValue {
        let Some(text) = self.social_text() else {
            return self.missing();
        };
        let hits: usize = self
            .cfg
            .security_keywords
            .iter()
            .map(|k| count_phrase(&text, k))
            .sum();
        let (lo, hi) = self.cfg.security_keyword_thresholds;
        if hits < lo {
            Legitimate
        } else if hits < hi {
            Doubtful
        } else {
            Phishy
        }
    }

    fn generic_salutation(&self) -> IndicatorValue {
        let Some(lure) = self.record.lure_text.as_deref() else {
            return Legitimate;
        };
        if self
            .cfg
            .generic_salutations
            .iter()
            .any(|s| count_phrase(lure, s) > 0)
        {
            return Phishy;
        }
        let greeted = lure.lines().any(|line| {
            let l = line.trim_start().to_lowercase();
            [
                "dear ",
                "hello ",
                "hi ",
                "greetings",
                "good morning",
                "good afternoon",
                "good evening",
            ]
            .iter()
            .any(|g| l.starts_with(g))
        });
        if greeted {
            Legitimate
        } else {
            Doubtful
        }
    }

    fn buying_time(&self) -> IndicatorValue {
        let Some(text) = self.social_text() else {
            return self.missing();
        };
        if self
            .cfg
            .urgency_phrases
            .iter()
            .any(|p| count_phrase(&text, p) > 0)
        {
            Phishy
        } else if self
            .cfg
            .mild_urgency_phrases
            .iter()
            .any(|p| count_phrase(&text, p) > 0)
        {
            Doubtful
        } else {
            Legitimate
        }
    }
}

/// `count/total` against a `[lo, hi]` band: below `lo` Legitimate, up to and
/// including `hi` Doubtful, above Phishy. An empty population is Legitimate.
fn ratio_band(count: usize, total: usize, lo: f64, hi: f64) -> IndicatorValue {
    if total == 0 {
        return Legitimate;
    }
    let r = count as f64 / total as f64;
    if r < lo {
        Legitimate
    } else if r <= hi {
        Doubtful
    } else {
        Phishy
    }
}

fn url_length_rule(url: &str, cfg: &ExtractionConfig) -> IndicatorValue {
    let len = url.chars().count();
    let (lo, hi) = cfg.url_length_thresholds;
    if len < lo {
        Legitimate
    } else if len <= hi {
        Doubtful
    } else {
        Phishy
    }
}

fn at_symbol_rule(url: &str) -> IndicatorValue {
    if url.contains('@') {
        Phishy
    } else {
        Legitimate
    }
}

fn hex_rule(host: &str, path_and_query: &str, cfg: &ExtractionConfig) -> IndicatorValue {
    if count_percent_escapes(host) > 0 {
        Phishy
    } else if count_percent_escapes(path_and_query) > cfg.hex_escape_path_threshold {
        Doubtful
    } else {
        Legitimate
    }
}

/// Lowercased code with all whitespace removed.
fn squash(code: &str) -> String {
    code.chars()
        .filter(|c| !c.is_whitespace())
        .flat_map(char::to_lowercase)
        .collect()
}

fn mentions_right_button(squashed: &str) -> bool {
    squashed.contains("button==2")
        || squashed.contains("which==3")
        || squashed.contains("button===2")
}

/// Script bodies and inline handler values, squashed.
fn script_chunks(page: &Page) -> impl Iterator<Item = String> + '_ {
    page.scripts
        .iter()
        .map(|s| squash(s))
        .chain(page.handlers.iter().map(|(_, v)| squash(v)))
}

/// Assignments or navigation calls on `location` in squashed script code.
fn location_writes(code: &str) -> usize {
    let mut n = 0;
    let mut from = 0;
    while let Some(pos) = code[from..].find("location") {
        let after = &code[from + pos + "location".len()..];
        let write = (after.starts_with('=') && !after.starts_with("=="))
            || (after.starts_with(".href=") && !after.starts_with(".href=="))
            || after.starts_with(".replace(")
            || after.starts_with(".assign(");
        if write {
            n += 1;
        }
        from += pos + "location".len();
    }
    n
}

/// Brand tokens mentioned in `text`: a word equal to the token, or for tokens
/// of five or more letters, a word containing it.
fn brand_mentions<'c>(text: &str, brands: &'c [String]) -> Vec<&'c String> {
    let lower = text.to_lowercase();
    let words: Vec<&str> = lower
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .collect();
    brands
        .iter()
        .filter(|b| {
            words
                .iter()
                .any(|w| *w == b.as_str() || (b.chars().count() >= 5 && w.contains(b.as_str())))
        })
        .collect()
}

fn hyphen_touches_brand(label: &str, brands: &[String]) -> bool {
    let parts: Vec<&str> = label.split('-').collect();
    let last = parts.len() - 1;
    parts.iter().enumerate().any(|(i, part)| {
        brands.iter().any(|b| {
            !b.is_empty()
                && ((i > 0 && part.starts_with(b.as_str()))
                    || (i < last && part.ends_with(b.as_str())))
        })
    })
}

fn cookie_domain(set_cookie: &str) -> Option<String> {
    set_cookie.split(';').skip(1).find_map(|attr| {
        let (k, v) = attr.split_once('=')?;
        k.trim()
            .eq_ignore_ascii_case("domain")
            .then(|| v.trim().trim_start_matches('.').to_ascii_lowercase())
            .filter(|d| !d.is_empty())
    })
}

fn host_within(host: &str, domain: &str) -> bool {
    host == domain
        || host
            .strip_suffix(domain)
            .is_some_and(|prefix| prefix.ends_with('.'))
}

fn cn_matches(cn: &str, host: &str) -> bool {
    if cn == host {
        return true;
    }
    match cn.strip_prefix("*.") {
        Some(base) => host
            .strip_suffix(base)
            .and_then(|p| p.strip_suffix('.'))
            .is_some_and(|first| !first.is_empty() && !first.contains('.')),
        None => false,
    }
}

fn strip_www(host: &str) -> &str {
    host.strip_prefix("www.").unwrap_or(host)
}

/// If anchor text reads like a URL, its (scheme, lowercased host).
fn url_like_text(text: &str) -> Option<(Option<String>, String)> {
    let t = text.trim();
    if let Ok(u) = ParsedUrl::parse(t) {
        let scheme = u.scheme();
        if scheme == "http" || scheme == "https" {
            return Some((Some(scheme), u.host()));
        }
        return None;
    }
    if t.len() > 4
        && t.get(..4).is_some_and(|p| p.eq_ignore_ascii_case("www."))
        && !t.contains(char::is_whitespace)
    {
        let end = t.find(['/', '?', '#', ':']).unwrap_or(t.len());
        return Some((None, t[..end].to_ascii_lowercase()));
    }
    None
}

fn parse_for(id: IndicatorId, url: &str) -> Result<ParsedUrl<'_>, ExtractError> {
    ParsedUrl::parse(url).map_err(|e| ExtractError::InvalidUrl {
        indicator: id,
        url: url.to_string(),
        reason: e.reason(),
    })
}

/// Evaluates one indicator on `record`.
pub fn evaluate_indicator(
    id: IndicatorId,
    record: &WebsiteRecord,
    cfg: &ExtractionConfig,
) -> Result<IndicatorValue, ExtractError> {
    Ok(Site::new(record, cfg, id)?.evaluate(id))
}

/// Like [`evaluate_indicator`] but looks the indicator up by its canonical name.
pub fn evaluate_named(
    name: &str,
    record: &WebsiteRecord,
    cfg: &ExtractionConfig,
) -> Result<IndicatorValue, ExtractError> {
    evaluate_indicator(IndicatorId::from_name(name)?, record, cfg)
}

/// All 27 indicators in canonical order. A malformed URL fails the whole vector.
pub fn extract_all(
    record: &WebsiteRecord,
    cfg: &ExtractionConfig,
) -> Result<FeatureVector, ExtractError> {
    let site = Site::new(record, cfg, IndicatorId::ALL[0])?;
    Ok(FeatureVector::new(
        IndicatorId::ALL.map(|id| site.evaluate(id)),
    ))
}

pub fn ip_address_indicator(url: &str) -> Result<IndicatorValue, ExtractError> {
    let u = parse_for(IndicatorId::UsingIpAddress, url)?;
    Ok(if u.is_ip_host() { Phishy } else { Legitimate })
}

pub fn url_length_indicator(url: &str, cfg: &ExtractionConfig) -> IndicatorValue {
    url_length_rule(url, cfg)
}

pub fn at_symbol_indicator(url: &str) -> IndicatorValue {
    at_symbol_rule(url)
}

/// Hyphenated host labels; Phishy when a hyphen touches a brand token. IP hosts are Legitimate.
pub fn prefix_suffix_indicator(
    url: &str,
    cfg: &ExtractionConfig,
) -> Result<IndicatorValue, ExtractError> {
    let record = WebsiteRecord::new(url, chrono::DateTime::<chrono::Utc>::UNIX_EPOCH);
    evaluate_indicator(IndicatorId::PrefixSuffix, &record, cfg)
}

/// Percent escapes in the host, or too many in path and query. Never fails: an
/// unparseable URL is split leniently at `://` and the next `/`.
pub fn hex_char_indicator(url: &str, cfg: &ExtractionConfig) -> IndicatorValue {
    match ParsedUrl::parse(url) {
        Ok(u) => hex_rule(u.raw_host(), u.path_and_query(), cfg),
        Err(_) => {
            let after = url.split_once("://").map_or(url, |(_, a)| a);
            let split = after.find('/').unwrap_or(after.len());
            hex_rule(&after[..split], &after[split..], cfg)
        }
    }
}

pub fn anchor_url_indicator(
    record: &WebsiteRecord,
    cfg: &ExtractionConfig,
) -> Result<IndicatorValue, ExtractError> {
    evaluate_indicator(IndicatorId::AbnormalUrlOfAnchor, record, cfg)
}

pub fn sfh_indicator(
    record: &WebsiteRecord,
    cfg: &ExtractionConfig,
) -> Result<IndicatorValue, ExtractError> {
    evaluate_indicator(IndicatorId::ServerFormHandler, record, cfg)
}

pub fn ssl_indicator(
    record: &WebsiteRecord,
    cfg: &ExtractionConfig,
) -> Result<IndicatorValue, ExtractError> {
    evaluate_indicator(IndicatorId::SslCertificate, record, cfg)
}

pub fn salutation_indicator(
    record: &WebsiteRecord,
    cfg: &ExtractionConfig,
) -> Result<IndicatorValue, ExtractError> {
    evaluate_indicator(IndicatorId::GenericSalutation, record, cfg)
}
