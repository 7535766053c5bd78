//! Best-effort page collection over plain HTTP/1.0 and TLS.
//!
//! Headers and certificate evidence come from the first response (the host in
//! the record's URL). The page source is the body of the last response after
//! redirects.

use std::io::{self, Read, Write};
use std::net::{TcpStream, ToSocketAddrs};
use std::time::Duration;

use chrono::Utc;
use native_tls::TlsConnector;
use phishnet_core::url::{resolve, ParsedUrl};
use phishnet_core::{CertEvidence, DnsEvidence, WebsiteRecord};
use thiserror::Error;

pub const MAX_REDIRECTS: usize = 10;
const MAX_BODY: u64 = 8 << 20;

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("{url}: {reason}")]
    InvalidUrl { url: String, reason: &'static str },
    #[error("{url}: unsupported scheme")]
    Scheme { url: String },
    #[error("{url}: {source}")]
    Connect { url: String, source: io::Error },
    #[error("{url}: tls: {message}")]
    Tls { url: String, message: String },
    #[error("{url}: malformed response: {message}")]
    Response { url: String, message: String },
    #[error("{url}: more than {MAX_REDIRECTS} redirects")]
    TooManyRedirects { url: String },
}

struct Response {
    status: u16,
    headers: Vec<(String, String)>,
    body: String,
    cert: Option<CertEvidence>,
}

fn connect(url: &str, host: &str, port: u16, timeout: Duration) -> Result<TcpStream, FetchError> {
    let err = |source| FetchError::Connect {
        url: url.to_string(),
        source,
    };
    let addrs = (host, port).to_socket_addrs().map_err(err)?;
    let mut last = io::Error::new(io::ErrorKind::NotFound, "host has no addresses");
    for addr in addrs {
        match TcpStream::connect_timeout(&addr, timeout) {
            Ok(s) => {
                s.set_read_timeout(Some(timeout)).map_err(err)?;
                s.set_write_timeout(Some(timeout)).map_err(err)?;
                return Ok(s);
            }
            Err(e) => last = e,
        }
    }
    Err(err(last))
}

fn exchange<S: Read + Write>(mut s: S, url: &str, request: &str) -> Result<Vec<u8>, FetchError> {
    let err = |source| FetchError::Connect {
        url: url.to_string(),
        source,
    };
    s.write_all(request.as_bytes()).map_err(err)?;
    s.flush().map_err(err)?;
    let mut buf = Vec::new();
    match s.take(MAX_BODY).read_to_end(&mut buf) {
        Ok(_) => Ok(buf),
        // Servers that close TLS without close_notify still sent a full HTTP/1.0 response.
        Err(e) if e.kind() == io::ErrorKind::UnexpectedEof && !buf.is_empty() => Ok(buf),
        Err(e) => Err(err(e)),
    }
}

/// Certificate facts from a DER-encoded leaf.
pub fn cert_evidence(der: &[u8], valid: bool) -> Option<CertEvidence> {
    let (_, cert) = x509_parser::parse_x509_certificate(der).ok()?;
    let cn = cert
        .subject()
        .iter_common_name()
        .next()
        .and_then(|c| c.as_str().ok())
        .unwrap_or("")
        .to_string();
    Some(CertEvidence {
        issuer: cert.issuer().to_string(),
        subject_common_name: cn,
        valid,
        self_signed: cert.issuer().as_raw() == cert.subject().as_raw(),
    })
}

fn tls_exchange(
    tcp: TcpStream,
    url: &str,
    host: &str,
    request: &str,
    timeout: Duration,
    port: u16,
) -> Result<(Vec<u8>, Option<CertEvidence>), FetchError> {
    let tls_err = |e: &dyn std::fmt::Display| FetchError::Tls {
        url: url.to_string(),
        message: e.to_string(),
    };
    let strict = TlsConnector::new().map_err(|e| tls_err(&e))?;
    if let Ok(mut s) = strict.connect(host, tcp) {
        let cert = peer_cert(&mut s, true);
        return Ok((exchange(s, url, request)?, cert));
    }
    // Verification failed: reconnect without it so the certificate can still be inspected.
    let lax = TlsConnector::builder()
        .danger_accept_invalid_certs(true)
        .danger_accept_invalid_hostnames(true)
        .build()
        .map_err(|e| tls_err(&e))?;
    let tcp = connect(url, host, port, timeout)?;
    let mut s = lax.connect(host, tcp).map_err(|e| tls_err(&e))?;
    let cert = peer_cert(&mut s, false);
    Ok((exchange(s, url, request)?, cert))
}

fn peer_cert(s: &mut native_tls::TlsStream<TcpStream>, valid: bool) -> Option<CertEvidence> {
    let der = s.peer_certificate().ok()??.to_der().ok()?;
    cert_evidence(&der, valid)
}

/// Status, headers and body.
type RawResponse = (u16, Vec<(String, String)>, String);

fn parse_response(url: &str, raw: &[u8]) -> Result<RawResponse, FetchError> {
    let bad = |message: &str| FetchError::Response {
        url: url.to_string(),
        message: message.to_string(),
    };
    let split = raw
        .windows(4)
        .position(|w| w == b"\r\n\r\n")
        .map(|i| (i, i + 4))
        .or_else(|| {
            raw.windows(2)
                .position(|w| w == b"\n\n")
                .map(|i| (i, i + 2))
        })
        .ok_or_else(|| bad("no end of headers"))?;
    let head = String::from_utf8_lossy(&raw[..split.0]);
    let mut lines = head.lines();
    let status_line = lines.next().ok_or_else(|| bad("empty response"))?;
    let mut parts = status_line.split_whitespace();
    if !parts.next().is_some_and(|v| v.starts_with("HTTP/")) {
        return Err(bad("bad status line"));
    }
    let status = parts
        .next()
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| bad("bad status code"))?;
    let headers = lines
        .filter_map(|l| l.split_once(':'))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect();
    let body = String::from_utf8_lossy(&raw[split.1..]).into_owned();
    Ok((status, headers, body))
}

fn get(url: &str, timeout: Duration) -> Result<Response, FetchError> {
    let parsed = ParsedUrl::parse(url).map_err(|e| FetchError::InvalidUrl {
        url: url.to_string(),
        reason: e.reason(),
    })?;
    let https = match parsed.scheme().as_str() {
        "http" => false,
        "https" => true,
        _ => {
            return Err(FetchError::Scheme {
                url: url.to_string(),
            })
        }
    };
    let host = parsed.host();
    let port = parsed.port.unwrap_or(if https { 443 } else { 80 });
    let path = match parsed.path_and_query() {
        "" => "/",
        p if p.starts_with('?') => return get(&format!("{}/{p}", parsed.origin()), timeout),
        p => p,
    };
    let host_header = match parsed.port {
        Some(p) => format!("{}:{p}", parsed.raw_host()),
        None => parsed.raw_host().to_string(),
    };
    let request = format!(
        "GET {path} HTTP/1.0\r\nHost: {host_header}\r\nUser-Agent: phishnet/{}\r\nAccept: */*\r\nConnection: close\r\n\r\n",
        env!("CARGO_PKG_VERSION")
    );
    let tcp = connect(url, &host, port, timeout)?;
    let (raw, cert) = if https {
        tls_exchange(tcp, url, &host, &request, timeout, port)?
    } else {
        (exchange(tcp, url, &request)?, None)
    };
    let (status, headers, body) = parse_response(url, &raw)?;
    Ok(Response {
        status,
        headers,
        body,
        cert,
    })
}

/// Fetches `url`, following redirects, and fills in page source, headers,
/// the redirect chain and certificate evidence. Domain age is not looked up.
pub fn fetch_record(url: &str, timeout: Duration) -> Result<WebsiteRecord, FetchError> {
    let first = get(url, timeout)?;
    let mut record = WebsiteRecord::new(url, Utc::now());
    record.response_headers = Some(first.headers.clone());
    record.cert_evidence = first.cert.clone();
    record.dns_evidence = Some(DnsEvidence {
        resolvable: true,
        domain_age_days: None,
    });

    let mut chain = vec![url.to_string()];
    let mut current = first;
    while (300..400).contains(&current.status) {
        let Some(location) = header(&current.headers, "location") else {
            break;
        };
        if chain.len() > MAX_REDIRECTS {
            return Err(FetchError::TooManyRedirects {
                url: url.to_string(),
            });
        }
        let here = chain.last().expect("chain starts non-empty");
        let base = ParsedUrl::parse(here).expect("chain entries were parsed before");
        let next = resolve(&base, location);
        current = get(&next, timeout)?;
        chain.push(next);
    }
    record.redirect_chain = Some(chain);
    record.page_source = Some(current.body);
    Ok(record)
}

fn header<'a>(headers: &'a [(String, String)], name: &str) -> Option<&'a str> {
    headers
        .iter()
        .find(|(k, _)| k.eq_ignore_ascii_case(name))
        .map(|(_, v)| v.as_str())
}
