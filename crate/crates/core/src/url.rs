//! Lexical URL handling: authority splitting, IP-literal detection, relative
//! reference resolution and punycode decoding. Only what the indicators need;
//! no normalisation beyond lowercasing the scheme and host.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// An absolute URL broken into its components. Borrowed from the input string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedUrl<'a> {
    pub raw: &'a str,
    scheme: &'a str,
    pub userinfo: Option<&'a str>,
    host: &'a str,
    pub port: Option<u16>,
    /// Path, query and fragment, starting at the first `/`, `?` or `#` after the authority.
    pub rest: &'a str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UrlError {
    Empty,
    Whitespace,
    MissingScheme,
    MissingHost,
    BadPort,
}

impl UrlError {
    pub const fn reason(self) -> &'static str {
        match self {
            Self::Empty => "empty url",
            Self::Whitespace => "url contains whitespace or control characters",
            Self::MissingScheme => "missing scheme",
            Self::MissingHost => "missing host",
            Self::BadPort => "invalid port",
        }
    }
}

impl<'a> ParsedUrl<'a> {
    pub fn parse(raw: &'a str) -> Result<Self, UrlError> {
        if raw.is_empty() {
            return Err(UrlError::Empty);
        }
        if raw.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(UrlError::Whitespace);
        }
        let sep = raw.find("://").ok_or(UrlError::MissingScheme)?;
        let scheme = &raw[..sep];
        let mut chars = scheme.chars();
        let scheme_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
        if !scheme_ok {
            return Err(UrlError::MissingScheme);
        }
        let after = &raw[sep + 3..];
        let auth_end = after.find(['/', '?', '#']).unwrap_or(after.len());
        let authority = &after[..auth_end];
        let rest = &after[auth_end..];

        let (userinfo, hostport) = match authority.rfind('@') {
            Some(at) => (Some(&authority[..at]), &authority[at + 1..]),
            None => (None, authority),
        };
        let (host, port) = split_port(hostport)?;
        if host.is_empty() {
            return Err(UrlError::MissingHost);
        }
        Ok(Self {
            raw,
            scheme,
            userinfo,
            host,
            port,
            rest,
        })
    }

    /// Lowercased scheme.
    pub fn scheme(&self) -> String {
        self.scheme.to_ascii_lowercase()
    }

    pub fn is_https(&self) -> bool {
        self.scheme.eq_ignore_ascii_case("https")
    }

    /// Host exactly as written (may contain percent escapes).
    pub fn raw_host(&self) -> &'a str {
        self.host
    }

    /// Lowercased host with surrounding IPv6 brackets and a trailing dot removed.
    pub fn host(&self) -> String {
        let h = self.host.trim_start_matches('[').trim_end_matches(']');
        h.trim_end_matches('.').to_ascii_lowercase()
    }

    /// The path component (without query or fragment).
    pub fn path(&self) -> &'a str {
        let end = self.rest.find(['?', '#']).unwrap_or(self.rest.len());
        &self.rest[..end]
    }

    /// Path plus query, fragment excluded.
    pub fn path_and_query(&self) -> &'a str {
        let end = self.rest.find('#').unwrap_or(self.rest.len());
        &self.rest[..end]
    }

    /// `scheme://authority` prefix of the raw string.
    pub fn origin(&self) -> &'a str {
        &self.raw[..self.raw.len() - self.rest.len()]
    }

    pub fn is_ip_host(&self) -> bool {
        is_ip_literal(self.host)
    }
}

fn split_port(hostport: &str) -> Result<(&str, Option<u16>), UrlError> {
    if hostport.starts_with('[') {
        let close = hostport.find(']').ok_or(UrlError::MissingHost)?;
        let host = &hostport[..=close];
        let tail = &hostport[close + 1..];
        return match tail.strip_prefix(':') {
            Some(p) => Ok((host, parse_port(p)?)),
            None if tail.is_empty() => Ok((host, None)),
            None => Err(UrlError::BadPort),
        };
    }
    match hostport.rfind(':') {
        Some(i) => Ok((&hostport[..i], parse_port(&hostport[i + 1..])?)),
        None => Ok((hostport, None)),
    }
}

fn parse_port(p: &str) -> Result<Option<u16>, UrlError> {
    if p.is_empty() {
        return Ok(None);
    }
    if !p.bytes().all(|b| b.is_ascii_digit()) {
        return Err(UrlError::BadPort);
    }
    p.parse().map(Some).map_err(|_| UrlError::BadPort)
}

/// True when `host` is an IPv6 literal or any IPv4 spelling browsers accept:
/// dotted decimal, dotted hex/octal parts, or a single 32-bit integer.
pub fn is_ip_literal(host: &str) -> bool {
    let host = host.trim_end_matches('.');
    if host.starts_with('[') && host.ends_with(']') {
        return host.len() > 2 && host[1..host.len() - 1].contains(':');
    }
    parse_ipv4(host).is_some()
}

/// WHATWG-style IPv4 number parsing. Returns the address as a u32.
pub fn parse_ipv4(host: &str) -> Option<u32> {
    if host.is_empty() {
        return None;
    }
    let parts: Vec<&str> = host.split('.').collect();
    if parts.len() > 4 || parts.iter().any(|p| p.is_empty()) {
        return None;
    }
    let mut nums = Vec::with_capacity(parts.len());
    for p in &parts {
        nums.push(parse_ipv4_number(p)?);
    }
    let (last, head) = nums.split_last()?;
    if head.iter().any(|&n| n > 255) {
        return None;
    }
    let limit = 1u64 << (8 * (5 - nums.len()));
    if *last >= limit {
        return None;
    }
    let mut addr = *last;
    for (i, n) in head.iter().enumerate() {
        addr += n << (8 * (3 - i));
    }
    u32::try_from(addr).ok()
}

fn parse_ipv4_number(p: &str) -> Option<u64> {
    let lower = p.to_ascii_lowercase();
    let (digits, radix) = if let Some(h) = lower.strip_prefix("0x") {
        (h.to_string(), 16)
    } else if lower.len() > 1 && lower.starts_with('0') {
        (lower[1..].to_string(), 8)
    } else {
        (lower, 10)
    };
    if digits.is_empty() {
        // "0x" alone is zero
        return (radix == 16).then_some(0);
    }
    if digits.len() > 12 {
        return None;
    }
    u64::from_str_radix(&digits, radix).ok()
}

/// Counts `%XX` escapes (two hex digits) in `s`.
pub fn count_percent_escapes(s: &str) -> usize {
    let b = s.as_bytes();
    let mut n = 0;
    let mut i = 0;
    while i + 2 < b.len() {
        if b[i] == b'%' && b[i + 1].is_ascii_hexdigit() && b[i + 2].is_ascii_hexdigit() {
            n += 1;
            i += 3;
        } else {
            i += 1;
        }
    }
    n
}

/// Where a reference taken from a page points, relative to the page's URL.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkTarget {
    /// Empty, `#...`, or a script pseudo-scheme.
    Null,
    /// Resolves against the page itself (relative reference).
    Relative,
    /// Absolute http(s) or protocol-relative reference with the given lowercased host.
    Host(String),
    /// Some other scheme (`mailto:`, `tel:`, `data:` ...).
    OtherScheme,
}

/// Classifies an `href`/`src`/`action` value.
pub fn classify_reference(reference: &str) -> LinkTarget {
    let r = reference.trim();
    if r.is_empty() || r.starts_with('#') {
        return LinkTarget::Null;
    }
    let lower = r.to_ascii_lowercase();
    if lower.starts_with("javascript:") || lower.starts_with("vbscript:") {
        return LinkTarget::Null;
    }
    if let Some(after) = r.strip_prefix("//") {
        let end = after.find(['/', '?', '#']).unwrap_or(after.len());
        let auth = &after[..end];
        let hp = auth.rsplit_once('@').map_or(auth, |(_, h)| h);
        let host = split_port(hp).map(|(h, _)| h).unwrap_or(hp);
        return LinkTarget::Host(
            host.trim_matches(['[', ']'])
                .trim_end_matches('.')
                .to_ascii_lowercase(),
        );
    }
    if let Ok(u) = ParsedUrl::parse(r) {
        return LinkTarget::Host(u.host());
    }
    // "scheme:" without "//"
    if let Some(colon) = r.find(':') {
        let scheme = &r[..colon];
        let slash = r.find('/').unwrap_or(r.len());
        if colon < slash
            && !scheme.is_empty()
            && scheme
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        {
            return LinkTarget::OtherScheme;
        }
    }
    LinkTarget::Relative
}

/// Resolves `reference` against the absolute `base`, returning an absolute URL string.
pub fn resolve(base: &ParsedUrl<'_>, reference: &str) -> String {
    let r = reference.trim();
    if ParsedUrl::parse(r).is_ok() {
        return r.to_string();
    }
    if r.starts_with("//") {
        let mut out = base.scheme();
        out.push(':');
        out.push_str(r);
        return out;
    }
    let mut out = String::from(base.origin());
    if r.starts_with('/') {
        out.push_str(r);
    } else if r.starts_with('?') || r.starts_with('#') {
        let keep = if r.starts_with('?') {
            base.path()
        } else {
            base.path_and_query()
        };
        out.push_str(if keep.is_empty() { "/" } else { keep });
        out.push_str(r);
    } else {
        let path = base.path();
        let dir = path.rfind('/').map_or("/", |i| &path[..=i]);
        out.push_str(dir);
        out.push_str(r);
    }
    out
}

const PUNY_BASE: u32 = 36;
const PUNY_TMIN: u32 = 1;
const PUNY_TMAX: u32 = 26;
const PUNY_SKEW: u32 = 38;
const PUNY_DAMP: u32 = 700;

fn puny_adapt(mut delta: u32, num_points: u32, first: bool) -> u32 {
    delta /= if first { PUNY_DAMP } else { 2 };
    delta += delta / num_points;
    let mut k = 0;
    while delta > ((PUNY_BASE - PUNY_TMIN) * PUNY_TMAX) / 2 {
        delta /= PUNY_BASE - PUNY_TMIN;
        k += PUNY_BASE;
    }
    k + (PUNY_BASE - PUNY_TMIN + 1) * delta / (delta + PUNY_SKEW)
}

/// Decodes one punycode label body (the part after `xn--`). `None` on malformed input.
pub fn punycode_decode(input: &str) -> Option<String> {
    let (basic, encoded) = match input.rfind('-') {
        Some(i) => (&input[..i], &input[i + 1..]),
        None => ("", input),
    };
    if !basic.is_ascii() {
        return None;
    }
    let mut output: Vec<char> = basic.chars().collect();
    let mut n: u32 = 128;
    let mut i: u32 = 0;
    let mut bias = 72;
    let mut it = encoded.bytes().peekable();
    while it.peek().is_some() {
        let old_i = i;
        let mut w: u32 = 1;
        let mut k = PUNY_BASE;
        loop {
            let byte = it.next()?;
            let digit = match byte {
                b'a'..=b'z' => byte - b'a',
                b'A'..=b'Z' => byte - b'A',
                b'0'..=b'9' => byte - b'0' + 26,
                _ => return None,
            } as u32;
            i = i.checked_add(digit.checked_mul(w)?)?;
            let t = if k <= bias {
                PUNY_TMIN
            } else if k >= bias + PUNY_TMAX {
                PUNY_TMAX
            } else {
                k - bias
            };
            if digit < t {
                break;
            }
            w = w.checked_mul(PUNY_BASE - t)?;
            k += PUNY_BASE;
        }
        let len = output.len() as u32 + 1;
        bias = puny_adapt(i - old_i, len, old_i == 0);
        n = n.checked_add(i / len)?;
        i %= len;
        output.insert(i as usize, char::from_u32(n)?);
        i += 1;
    }
    Some(output.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_components() {
        let u = ParsedUrl::parse("HTTPS://user:pw@WWW.Example.com:8443/a/b?q=1#frag").unwrap();
        assert_eq!(u.scheme(), "https");
        assert_eq!(u.userinfo, Some("user:pw"));
        assert_eq!(u.host(), "www.example.com");
        assert_eq!(u.port, Some(8443));
        assert_eq!(u.path(), "/a/b");
        assert_eq!(u.path_and_query(), "/a/b?q=1");
        assert_eq!(u.origin(), "HTTPS://user:pw@WWW.Example.com:8443");
    }

    #[test]
    fn at_in_path_is_not_userinfo() {
        let u = ParsedUrl::parse("http://203.0.113.7/@sbi-login").unwrap();
        assert_eq!(u.userinfo, None);
        assert_eq!(u.host(), "203.0.113.7");
        assert_eq!(u.path(), "/@sbi-login");
    }

    #[test]
    fn rejects_non_urls() {
        assert_eq!(ParsedUrl::parse(""), Err(UrlError::Empty));
        assert_eq!(ParsedUrl::parse("not a url"), Err(UrlError::Whitespace));
        assert_eq!(
            ParsedUrl::parse("example.com/x"),
            Err(UrlError::MissingScheme)
        );
        assert_eq!(ParsedUrl::parse("http:///x"), Err(UrlError::MissingHost));
        assert_eq!(ParsedUrl::parse("http://h:99999/"), Err(UrlError::BadPort));
        assert_eq!(ParsedUrl::parse("1http://h/"), Err(UrlError::MissingScheme));
    }

    #[test]
    fn ip_literals() {
        for h in [
            "125.98.3.123",
            "0x7f000001",
            "2130706433",
            "0x7f.0.0.1",
            "0177.0.0.1",
            "[::1]",
            "10.0.0.1.",
        ] {
            assert!(is_ip_literal(h), "{h}");
        }
        for h in [
            "www.onlinesbi.com",
            "example.com",
            "256.1.1.1",
            "1.2.3.4.5",
            "0x7g000001",
            "[]",
            "a1.b2",
        ] {
            assert!(!is_ip_literal(h), "{h}");
        }
        assert_eq!(parse_ipv4("0x7f000001"), Some(0x7f00_0001));
        assert_eq!(parse_ipv4("127.1"), Some(0x7f00_0001));
    }

    #[test]
    fn percent_escapes() {
        assert_eq!(count_percent_escapes("%77%77%77"), 3);
        assert_eq!(count_percent_escapes("/%61%62%63%64%65%66"), 6);
        assert_eq!(count_percent_escapes("%zz%4"), 0);
        assert_eq!(count_percent_escapes("%41"), 1);
        assert_eq!(count_percent_escapes(""), 0);
    }

    #[test]
    fn classifies_references() {
        assert_eq!(classify_reference("#"), LinkTarget::Null);
        assert_eq!(classify_reference(""), LinkTarget::Null);
        assert_eq!(classify_reference("JavaScript:void(0)"), LinkTarget::Null);
        assert_eq!(classify_reference("/login"), LinkTarget::Relative);
        assert_eq!(classify_reference("img/a.png"), LinkTarget::Relative);
        assert_eq!(classify_reference("mailto:a@b.c"), LinkTarget::OtherScheme);
        assert_eq!(
            classify_reference("https://Evil.example.net/x"),
            LinkTarget::Host("evil.example.net".into())
        );
        assert_eq!(
            classify_reference("//cdn.example.org:8080/x.js"),
            LinkTarget::Host("cdn.example.org".into())
        );
    }

    #[test]
    fn resolves_references() {
        let base = ParsedUrl::parse("http://a.example/dir/page.html?x=1").unwrap();
        assert_eq!(resolve(&base, "/root"), "http://a.example/root");
        assert_eq!(
            resolve(&base, "next.html"),
            "http://a.example/dir/next.html"
        );
        assert_eq!(resolve(&base, "//b.example/"), "http://b.example/");
        assert_eq!(resolve(&base, "https://c.example/"), "https://c.example/");
        assert_eq!(resolve(&base, "?y=2"), "http://a.example/dir/page.html?y=2");
    }

    #[test]
    fn punycode_vectors() {
        // RFC 3492 sample and a well known homograph
        assert_eq!(punycode_decode("bcher-kva").as_deref(), Some("bücher"));
        assert_eq!(punycode_decode("80ak6aa92e").as_deref(), Some("аррӏе"));
        assert_eq!(punycode_decode("mnchen-3ya").as_deref(), Some("münchen"));
        assert_eq!(punycode_decode("!!"), None);
    }
}
