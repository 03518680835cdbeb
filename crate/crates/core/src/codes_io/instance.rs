//! Plain-text instance files.
//!
//! ```text
//! QDEC 1
//! n=2 m=1 fullrank=1
//! H 11|00
//! s 1
//! t 2
//! eps 3/7
//! ```
//!
//! `s`, `t` and `eps` are optional and may come in any order. Blank lines and
//! lines starting with `#` are skipped. An optional `REDUCTION <kind>` block
//! at the end records how the instance was derived from another one.

use std::fmt::Write as _;

use crate::channel::DepolarizingParam;
use crate::decoders::DecodeInstance;
use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};
use crate::pauli::validate_check_matrix;

pub const MAGIC: &str = "QDEC 1";

/// How an instance was obtained from another one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Rank reduction: the original matrix is `R · H'` and the original
    /// syndrome `s`.
    FullRank { row_indices: Vec<usize>, r: BitMat, s: BitVec, consistent: bool },
    /// Bounded-distance instance answered through QMLD with bound `t`.
    QbddToQmld { t: usize },
    /// QMLD instance answered through QMEPD at the parameter chosen for `m`
    /// rows.
    QmldToQmepd { m: usize, eps: DepolarizingParam },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::FullRank { .. } => "fullrank",
            Certificate::QbddToQmld { .. } => "qbdd2qmld",
            Certificate::QmldToQmepd { .. } => "qmld2qmepd",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: DecodeInstance,
    pub certificate: Option<Certificate>,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

/// `key` alone, or `key value`.
fn field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    if rest.is_empty() {
        Some("")
    } else {
        rest.strip_prefix(' ')
    }
}

fn parse_bits(line: usize, text: &str, len: usize) -> Result<BitVec> {
    let v: BitVec = text.parse().map_err(|_| syntax(line, format!("invalid bit string `{text}`")))?;
    if v.len() != len {
        return Err(syntax(line, format!("expected {len} bits, found {}", v.len())));
    }
    Ok(v)
}

fn parse_usize(line: usize, text: &str, what: &str) -> Result<usize> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, format!("invalid {what} `{text}`")));
    }
    text.parse().map_err(|_| syntax(line, format!("{what} `{text}` out of range")))
}

fn parse_flag(line: usize, text: &str, what: &str) -> Result<bool> {
    match text {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(syntax(line, format!("{what} must be 0 or 1, found `{text}`"))),
    }
}

fn parse_eps(line: usize, text: &str) -> Result<DepolarizingParam> {
    text.parse().map_err(|e: Error| syntax(line, e.to_string()))
}

fn parse_header(line: usize, text: &str) -> Result<(usize, usize, bool)> {
    let parts: Vec<&str> = text.split(' ').collect();
    let [n, m, fr] = parts[..] else {
        return Err(syntax(line, "expected `n=<int> m=<int> fullrank=<0|1>`"));
    };
    fn value<'a>(line: usize, part: &'a str, key: &str) -> Result<&'a str> {
        part.strip_prefix(key)
            .and_then(|p| p.strip_prefix('='))
            .ok_or_else(|| syntax(line, format!("expected `{key}=`, found `{part}`")))
    }
    let n = parse_usize(line, value(line, n, "n")?, "n")?;
    let m = parse_usize(line, value(line, m, "m")?, "m")?;
    let fr = parse_flag(line, value(line, fr, "fullrank")?, "fullrank")?;
    if n == 0 || n > crate::pauli::MAX_QUBITS {
        return Err(syntax(line, format!("n must lie in 1..={}", crate::pauli::MAX_QUBITS)));
    }
    if m > crate::gf2::MAX_BITS {
        return Err(syntax(line, format!("m must be at most {}", crate::gf2::MAX_BITS)));
    }
    Ok((n, m, fr))
}

fn parse_row(line: usize, text: &str, n: usize) -> Result<BitVec> {
    let (x, z) = text
        .split_once('|')
        .ok_or_else(|| syntax(line, "expected a row `<xbits>|<zbits>`"))?;
    let x = parse_bits(line, x, n)?;
    let z = parse_bits(line, z, n)?;
    Ok(x.concat(&z).expect("2n ≤ 128"))
}

/// Parses an instance file, including any trailing certificate.
pub fn parse_instance_file(text: &str) -> Result<InstanceFile> {
    let mut lines = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        if raw.contains('\r') {
            return Err(syntax(i + 1, "carriage return in input; use LF line endings"));
        }
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        lines.push((i + 1, raw));
    }
    let mut it = lines.into_iter();
    let last_line = text.split('\n').count();

    match it.next() {
        Some((_, MAGIC)) => {}
        Some((l, other)) => return Err(syntax(l, format!("expected `{MAGIC}`, found `{other}`"))),
        None => return Err(syntax(last_line, format!("empty input; expected `{MAGIC}`"))),
    }
    let (l, header) = it.next().ok_or_else(|| syntax(last_line, "missing size header"))?;
    let (n, m, full_rank) = parse_header(l, header)?;

    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let (l, text) = it
            .next()
            .ok_or_else(|| syntax(last_line, format!("expected {m} `H` rows, found {i}")))?;
        let row = field(text, "H").ok_or_else(|| syntax(l, format!("expected `H` row {} of {m}", i + 1)))?;
        rows.push(parse_row(l, row, n)?);
    }
    let h = BitMat::from_rows(2 * n, rows)?;

    let (mut s, mut t, mut eps) = (None, None, None);
    let mut certificate = None;
    while let Some((l, text)) = it.next() {
        if let Some(v) = field(text, "s") {
            if s.replace(parse_bits(l, v, m)?).is_some() {
                return Err(syntax(l, "duplicate `s`"));
            }
        } else if let Some(v) = field(text, "t") {
            if t.replace(parse_usize(l, v, "t")?).is_some() {
                return Err(syntax(l, "duplicate `t`"));
            }
        } else if let Some(v) = field(text, "eps") {
            if eps.replace(parse_eps(l, v)?).is_some() {
                return Err(syntax(l, "duplicate `eps`"));
            }
        } else if let Some(kind) = field(text, "REDUCTION") {
            let rest: Vec<(usize, &str)> = it.by_ref().collect();
            certificate = Some(parse_certificate(l, kind, &rest, m, last_line)?);
        } else if text.starts_with("H ") || text == "H" {
            return Err(syntax(l, format!("more than m={m} `H` rows")));
        } else {
            return Err(syntax(l, format!("unexpected line `{text}`")));
        }
    }

    let h = validate_check_matrix(h, full_rank)?;
    Ok(InstanceFile { instance: DecodeInstance { h, s, t, eps }, certificate })
}

struct Cursor<'a> {
    lines: &'a [(usize, &'a str)],
    pos: usize,
    kind: &'a str,
    last_line: usize,
}

impl Cursor<'_> {
    fn peek_is(&self, key: &str) -> bool {
        self.lines.get(self.pos).is_some_and(|(_, text)| field(text, key).is_some())
    }

    fn expect(&mut self, key: &str) -> Result<(usize, String)> {
        let &(l, text) = self
            .lines
            .get(self.pos)
            .ok_or_else(|| syntax(self.last_line, format!("REDUCTION {}: missing `{key}`", self.kind)))?;
        self.pos += 1;
        field(text, key)
            .map(|v| (l, v.to_owned()))
            .ok_or_else(|| syntax(l, format!("expected `{key}`, found `{text}`")))
    }
}

fn parse_certificate(
    at: usize,
    kind: &str,
    lines: &[(usize, &str)],
    m_prime: usize,
    last_line: usize,
) -> Result<Certificate> {
    let mut cur = Cursor { lines, pos: 0, kind, last_line };
    let cert = match kind {
        "fullrank" => {
            let (l, rows) = cur.expect("rows")?;
            let row_indices = rows
                .split(' ')
                .filter(|w| !w.is_empty())
                .map(|w| parse_usize(l, w, "row index"))
                .collect::<Result<Vec<_>>>()?;
            if row_indices.len() != m_prime {
                return Err(syntax(l, format!("expected {m_prime} row indices, found {}", row_indices.len())));
            }
            // One `R` line per row of the original matrix.
            let mut r = BitMat::empty(m_prime);
            while cur.peek_is("R") {
                let (l, bits) = cur.expect("R")?;
                r.push_row(parse_bits(l, &bits, m_prime)?)?;
            }
            let m = r.nrows();
            if let Some(&j) = row_indices.iter().find(|&&j| j >= m) {
                return Err(syntax(at, format!("row index {j} out of range for {m} rows")));
            }
            let (l, s) = cur.expect("s")?;
            let s = parse_bits(l, &s, m)?;
            let (l, c) = cur.expect("consistent")?;
            Certificate::FullRank { row_indices, r, s, consistent: parse_flag(l, &c, "consistent")? }
        }
        "qbdd2qmld" => {
            let (l, t) = cur.expect("t")?;
            Certificate::QbddToQmld { t: parse_usize(l, &t, "t")? }
        }
        "qmld2qmepd" => {
            let (l, mm) = cur.expect("m")?;
            let mm = parse_usize(l, &mm, "m")?;
            let (l, eps) = cur.expect("eps")?;
            Certificate::QmldToQmepd { m: mm, eps: parse_eps(l, &eps)? }
        }
        other => return Err(syntax(at, format!("unknown reduction kind `{other}`"))),
    };
    if let Some(&(l, text)) = lines.get(cur.pos) {
        return Err(syntax(l, format!("unexpected line `{text}` after REDUCTION {kind}")));
    }
    Ok(cert)
}

pub fn parse_instance(text: &str) -> Result<DecodeInstance> {
    parse_instance_file(text).map(|f| f.instance)
}

/// `key value`, or just `key` for an empty value.
fn push_field(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let value = value.to_string();
    if value.is_empty() {
        out.push_str(key);
    } else {
        let _ = write!(out, "{key} {value}");
    }
    out.push('\n');
}

pub fn serialize_instance(inst: &DecodeInstance) -> String {
    let h = &inst.h;
    let mut out = format!("{MAGIC}\nn={} m={} fullrank={}\n", h.n(), h.m(), u8::from(h.full_rank()));
    for i in 0..h.m() {
        push_field(&mut out, "H", h.row(i));
    }
    if let Some(s) = &inst.s {
        push_field(&mut out, "s", s);
    }
    if let Some(t) = inst.t {
        push_field(&mut out, "t", t);
    }
    if let Some(eps) = &inst.eps {
        push_field(&mut out, "eps", eps);
    }
    out
}

pub fn serialize_instance_file(file: &InstanceFile) -> String {
    let mut out = serialize_instance(&file.instance);
    let Some(cert) = &file.certificate else {
        return out;
    };
    push_field(&mut out, "REDUCTION", cert.kind());
    match cert {
        Certificate::FullRank { row_indices, r, s, consistent } => {
            let rows: Vec<String> = row_indices.iter().map(usize::to_string).collect();
            push_field(&mut out, "rows", rows.join(" "));
            for row in r.rows() {
                push_field(&mut out, "R", row);
            }
            push_field(&mut out, "s", s);
            push_field(&mut out, "consistent", u8::from(*consistent));
        }
        Certificate::QbddToQmld { t } => push_field(&mut out, "t", t),
        Certificate::QmldToQmepd { m, eps } => {
            push_field(&mut out, "m", m);
            push_field(&mut out, "eps", eps);
        }
    }
    out
}
