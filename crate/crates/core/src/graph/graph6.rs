//! graph6 records for graphs of order at most 62 (single size byte).
//!
//! A record is the byte `n + 63` followed by the upper triangle of the
//! adjacency matrix read column by column (`x01, x02, x12, x03, ...`),
//! packed big-endian into 6-bit groups, each written as `value + 63`.

use std::io::BufRead;

use thiserror::Error;

use super::Graph;

pub const MAX_GRAPH6_ORDER: usize = 62;
pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte 0x{byte:02x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("size byte at offset {offset} encodes order {n}; supported orders are 1..={max}", max = MAX_GRAPH6_ORDER)]
    Order { offset: usize, n: usize },
    #[error("record truncated at offset {offset}: order {n} needs {expected} bytes")]
    Truncated { offset: usize, n: usize, expected: usize },
    #[error("unexpected trailing byte at offset {offset}")]
    Trailing { offset: usize },
    #[error("nonzero padding bits in byte at offset {offset}")]
    Padding { offset: usize },
    #[error("cannot encode order {0}; graph6 records here hold at most {max} vertices", max = MAX_GRAPH6_ORDER)]
    Unencodable(usize),
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<Graph6Error> },
    #[error("read error: {0}")]
    Io(String),
}

impl Graph6Error {
    /// Line number when the error came from a multi-record input.
    pub fn line(&self) -> Option<usize> {
        match self {
            Graph6Error::Line { line, .. } => Some(*line),
            _ => None,
        }
    }
}

fn bits_len(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Parses one record. A leading `>>graph6<<` header and trailing line
/// terminators are accepted; byte offsets count from the start of `line`.
pub fn parse(line: &str) -> Result<Graph, Graph6Error> {
    parse_bytes(line.as_bytes())
}

pub fn parse_bytes(line: &[u8]) -> Result<Graph, Graph6Error> {
    let mut end = line.len();
    while end > 0 && matches!(line[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let start = if line[..end].starts_with(HEADER.as_bytes()) { HEADER.len() } else { 0 };
    let rec = &line[start..end];
    if rec.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in rec.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte { offset: start + i, byte: b });
        }
    }
    let n = (rec[0] - 63) as usize;
    if n == 0 || n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::Order { offset: start, n });
    }
    let nbits = bits_len(n);
    let body_len = nbits.div_ceil(6);
    let body = &rec[1..];
    if body.len() < body_len {
        return Err(Graph6Error::Truncated { offset: start + rec.len(), n, expected: 1 + body_len });
    }
    if body.len() > body_len {
        return Err(Graph6Error::Trailing { offset: start + 1 + body_len });
    }
    if !nbits.is_multiple_of(6) {
        let last = body[body_len - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding { offset: start + body_len });
        }
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let group = body[k / 6] - 63;
            if group >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(adj))
}

/// Encodes `g` without header or newline.
pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::Unencodable(n));
    }
    let nbits = bits_len(n);
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(group + 63);
                group = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((group << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses newline-delimited records, skipping blank lines and a header-only
/// line. Returns each graph with its 1-based line number.
pub fn parse_records(text: &str) -> Result<Vec<(usize, Graph)>, Graph6Error> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if let Some(g) = parse_line(idx + 1, line)? {
            out.push(g);
        }
    }
    Ok(out)
}

pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<(usize, Graph)>, Graph6Error> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Graph6Error::Io(e.to_string()))?;
        if let Some(g) = parse_line(idx + 1, &line)? {
            out.push(g);
        }
    }
    Ok(out)
}

fn parse_line(line_no: usize, line: &str) -> Result<Option<(usize, Graph)>, Graph6Error> {
    let trimmed = line.trim_end_matches(['\r', '\n']);
    if trimmed.is_empty() || trimmed == HEADER {
        return Ok(None);
    }
    parse(trimmed)
        .map(|g| Some((line_no, g)))
        .map_err(|e| Graph6Error::Line { line: line_no, source: Box::new(e) })
}
