//! Tolerant tag-level HTML scanning.
//!
//! No DOM is built and nothing is executed. The scanner splits markup into
//! tags, text and raw script/style bodies; [`Page`] then collects the pieces
//! the indicators look at (anchors, resources, forms, frames, scripts).

use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Open {
        name: String,
        attrs: Vec<(String, String)>,
        self_closing: bool,
    },
    Close(String),
    Text(String),
    /// Body of a `<script>` or `<style>` element.
    Raw {
        parent: String,
        content: String,
    },
}

const RAW_TEXT: [&str; 2] = ["script", "style"];

pub fn tokenize(src: &str) -> Vec<Token> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut text_start = 0;
    let mut i = 0;
    let flush = |out: &mut Vec<Token>, from: usize, to: usize| {
        if from < to {
            out.push(Token::Text(decode_entities(&src[from..to])));
        }
    };
    while i < b.len() {
        if b[i] != b'<' {
            i += 1;
            continue;
        }
        let next = b.get(i + 1).copied();
        match next {
            Some(b'!') if src[i..].starts_with("<!--") => {
                flush(&mut out, text_start, i);
                i = src[i + 4..].find("-->").map_or(b.len(), |e| i + 4 + e + 3);
                text_start = i;
            }
            Some(b'!') | Some(b'?') => {
                flush(&mut out, text_start, i);
                i = src[i..].find('>').map_or(b.len(), |e| i + e + 1);
                text_start = i;
            }
            Some(b'/') if b.get(i + 2).is_some_and(u8::is_ascii_alphabetic) => {
                flush(&mut out, text_start, i);
                let name_end = scan_name(b, i + 2);
                out.push(Token::Close(src[i + 2..name_end].to_ascii_lowercase()));
                i = src[name_end..]
                    .find('>')
                    .map_or(b.len(), |e| name_end + e + 1);
                text_start = i;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                flush(&mut out, text_start, i);
                let name_end = scan_name(b, i + 1);
                let name = src[i + 1..name_end].to_ascii_lowercase();
                let (attrs, self_closing, end) = scan_attrs(src, name_end);
                i = end;
                let raw = RAW_TEXT.contains(&name.as_str()) && !self_closing;
                out.push(Token::Open {
                    name: name.clone(),
                    attrs,
                    self_closing,
                });
                if raw {
                    let close = find_close_tag(src, i, &name);
                    out.push(Token::Raw {
                        parent: name.clone(),
                        content: src[i..close].to_string(),
                    });
                    i = close;
                }
                text_start = i;
            }
            _ => i += 1,
        }
    }
    flush(&mut out, text_start, b.len());
    out
}

fn scan_name(b: &[u8], mut i: usize) -> usize {
    while i < b.len() && (b[i].is_ascii_alphanumeric() || matches!(b[i], b'-' | b'_' | b':')) {
        i += 1;
    }
    i
}

fn scan_attrs(src: &str, mut i: usize) -> (Vec<(String, String)>, bool, usize) {
    let b = src.as_bytes();
    let mut attrs = Vec::new();
    loop {
        while i < b.len() && (b[i].is_ascii_whitespace() || b[i] == b'/') {
            if b[i] == b'/' && b.get(i + 1) == Some(&b'>') {
                return (attrs, true, i + 2);
            }
            i += 1;
        }
        if i >= b.len() {
            return (attrs, false, b.len());
        }
        if b[i] == b'>' {
            return (attrs, false, i + 1);
        }
        let start = i;
        while i < b.len() && !b[i].is_ascii_whitespace() && !matches!(b[i], b'=' | b'>' | b'/') {
            i += 1;
        }
        // a stray quote or '=' with no name: skip one byte to guarantee progress
        if i == start {
            i += 1;
            continue;
        }
        let name = src[start..i].to_ascii_lowercase();
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        let mut value = String::new();
        if i < b.len() && b[i] == b'=' {
            i += 1;
            while i < b.len() && b[i].is_ascii_whitespace() {
                i += 1;
            }
            if i < b.len() && (b[i] == b'"' || b[i] == b'\'') {
                let q = b[i];
                let vstart = i + 1;
                let vend = src[vstart..]
                    .find(q as char)
                    .map_or(b.len(), |e| vstart + e);
                value = decode_entities(&src[vstart..vend]);
                i = (vend + 1).min(b.len());
            } else {
                let vstart = i;
                while i < b.len() && !b[i].is_ascii_whitespace() && b[i] != b'>' {
                    i += 1;
                }
                value = decode_entities(&src[vstart..i]);
            }
        }
        attrs.push((name, value));
    }
}

fn find_close_tag(src: &str, from: usize, name: &str) -> usize {
    let lower = src[from..].to_ascii_lowercase();
    let mut pat = String::from("</");
    pat.push_str(name);
    lower.find(&pat).map_or(src.len(), |e| from + e)
}

/// Decodes the common named entities and numeric character references.
pub fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        rest = &rest[amp..];
        let semi = rest.bytes().take(12).position(|b| b == b';');
        let decoded = semi.and_then(|end| {
            let ent = &rest[1..end];
            let c = match ent {
                "amp" => Some('&'),
                "lt" => Some('<'),
                "gt" => Some('>'),
                "quot" => Some('"'),
                "apos" => Some('\''),
                "nbsp" => Some(' '),
                _ => ent.strip_prefix('#').and_then(|num| {
                    let n = match num.strip_prefix(['x', 'X']) {
                        Some(h) => u32::from_str_radix(h, 16).ok(),
                        None => num.parse().ok(),
                    };
                    n.and_then(char::from_u32)
                }),
            };
            c.map(|c| (c, end + 1))
        });
        match decoded {
            Some((c, len)) => {
                out.push(c);
                rest = &rest[len..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Anchor {
    pub href: String,
    pub text: String,
    pub onmouseover: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResourceKind {
    Image,
    Script,
    Stylesheet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resource {
    pub kind: ResourceKind,
    pub url: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormInput {
    /// Lowercased `type`, defaulting to `text`.
    pub kind: String,
    pub name: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Form {
    /// `None` when the attribute is absent.
    pub action: Option<String>,
    pub method: String,
    pub inputs: Vec<FormInput>,
    pub has_submit: bool,
}

impl Form {
    pub fn has_password(&self) -> bool {
        self.inputs.iter().any(|i| i.kind == "password")
    }

    pub fn has_text_entry(&self) -> bool {
        self.inputs.iter().any(|i| {
            matches!(
                i.kind.as_str(),
                "text" | "password" | "email" | "tel" | "number"
            )
        })
    }
}

/// The parts of a page the indicators inspect.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Page {
    pub title: String,
    /// Visible text outside `<script>`, `<style>` and `<title>`, space-joined.
    pub body_text: String,
    pub anchors: Vec<Anchor>,
    pub resources: Vec<Resource>,
    pub forms: Vec<Form>,
    pub frames: Vec<String>,
    pub scripts: Vec<String>,
    /// Values of every `on*` event-handler attribute, with the attribute name.
    pub handlers: Vec<(String, String)>,
    pub meta_refresh: usize,
}

impl Page {
    pub fn parse(src: &str) -> Self {
        let mut page = Page::default();
        let mut in_title = false;
        let mut open_anchor: Option<Anchor> = None;
        let mut open_form: Option<Form> = None;
        let mut stray_inputs = Form::default();

        for tok in tokenize(src) {
            match tok {
                Token::Open {
                    name,
                    attrs,
                    self_closing,
                } => {
                    let attr =
                        |k: &str| attrs.iter().find(|(n, _)| n == k).map(|(_, v)| v.as_str());
                    for (n, v) in &attrs {
                        if n.starts_with("on") && n.len() > 2 {
                            page.handlers.push((n.clone(), v.clone()));
                        }
                    }
                    match name.as_str() {
                        "title" => in_title = !self_closing,
                        "a" => {
                            if let Some(a) = open_anchor.take() {
                                page.anchors.push(a);
                            }
                            let a = Anchor {
                                href: attr("href").unwrap_or("").to_string(),
                                text: String::new(),
                                onmouseover: attr("onmouseover").map(str::to_string),
                            };
                            if self_closing {
                                page.anchors.push(a);
                            } else {
                                open_anchor = Some(a);
                            }
                        }
                        "img" => push_resource(&mut page, ResourceKind::Image, attr("src")),
                        "script" => push_resource(&mut page, ResourceKind::Script, attr("src")),
                        "link" => {
                            let rel = attr("rel").unwrap_or("").to_ascii_lowercase();
                            if rel.split_whitespace().any(|r| r == "stylesheet") {
                                push_resource(&mut page, ResourceKind::Stylesheet, attr("href"));
                            }
                        }
                        "iframe" | "frame" => {
                            if let Some(s) = attr("src") {
                                page.frames.push(s.to_string());
                            }
                        }
                        "meta" => {
                            let equiv = attr("http-equiv").unwrap_or("");
                            if equiv.eq_ignore_ascii_case("refresh") {
                                page.meta_refresh += 1;
                            }
                        }
                        "form" => {
                            if let Some(f) = open_form.take() {
                                page.forms.push(f);
                            }
                            let f = Form {
                                action: attr("action").map(str::to_string),
                                method: attr("method").unwrap_or("get").to_ascii_lowercase(),
                                ..Form::default()
                            };
                            open_form = Some(f);
                        }
                        "input" | "button" => {
                            let default = if name == "button" { "submit" } else { "text" };
                            let kind = attr("type").unwrap_or(default).trim().to_ascii_lowercase();
                            let form = open_form.as_mut().unwrap_or(&mut stray_inputs);
                            if matches!(kind.as_str(), "submit" | "image") {
                                form.has_submit = true;
                            }
                            if name == "input" {
                                form.inputs.push(FormInput {
                                    kind,
                                    name: attr("name").unwrap_or("").to_string(),
                                });
                            }
                        }
                        _ => {}
                    }
                }
                Token::Close(name) => match name.as_str() {
                    "title" => in_title = false,
                    "a" => {
                        if let Some(a) = open_anchor.take() {
                            page.anchors.push(a);
                        }
                    }
                    "form" => {
                        if let Some(f) = open_form.take() {
                            page.forms.push(f);
                        }
                    }
                    _ => {}
                },
                Token::Text(t) => {
                    if in_title {
                        push_spaced(&mut page.title, &t);
                    } else {
                        push_spaced(&mut page.body_text, &t);
                    }
                    if let Some(a) = open_anchor.as_mut() {
                        push_spaced(&mut a.text, &t);
                    }
                }
                Token::Raw { parent, content } => {
                    if parent == "script" {
                        page.scripts.push(content);
                    }
                }
            }
        }
        if let Some(a) = open_anchor {
            page.anchors.push(a);
        }
        if let Some(f) = open_form {
            page.forms.push(f);
        }
        page
    }
}

fn push_resource(page: &mut Page, kind: ResourceKind, url: Option<&str>) {
    if let Some(u) = url.filter(|u| !u.trim().is_empty()) {
        page.resources.push(Resource {
            kind,
            url: u.to_string(),
        });
    }
}

fn push_spaced(buf: &mut String, text: &str) {
    for word in text.split_whitespace() {
        if !buf.is_empty() {
            buf.push(' ');
        }
        buf.push_str(word);
    }
}
