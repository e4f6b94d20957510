//! graph6 reading and writing.
//!
//! Both the short order header (`n <= 62`) and the two long forms are
//! supported. digraph6 (`&`) and sparse6 (`:`) records are rejected with their
//! own error variants.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::Graph;

pub const HEADER: &[u8] = b">>graph6<<";

/// Largest order expressible in graph6.
pub const MAX_ORDER: u64 = 68_719_476_735;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("digraph6 records are not supported")]
    Digraph6,
    #[error("sparse6 records are not supported")]
    Sparse6,
    #[error("invalid byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("record truncated at offset {offset}: expected {expected} bytes in total")]
    Truncated { offset: usize, expected: usize },
    #[error("unexpected trailing data at offset {offset}")]
    TrailingData { offset: usize },
    #[error("order {0} is outside the range graph6 can encode")]
    UnsupportedOrder(u64),
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
        Some(&b) => Err(Graph6Error::InvalidByte { offset, byte: b }),
        None => Err(Graph6Error::Truncated {
            offset,
            expected: offset + 1,
        }),
    }
}

fn read_order(bytes: &[u8]) -> Result<(u64, usize), Graph6Error> {
    let read_wide = |start: usize, count: usize| -> Result<u64, Graph6Error> {
        (start..start + count).try_fold(0u64, |acc, i| Ok((acc << 6) | sextet(bytes, i)?))
    };
    if bytes.first() != Some(&126) {
        return Ok((sextet(bytes, 0)?, 1));
    }
    if bytes.get(1) != Some(&126) {
        return Ok((read_wide(1, 3)?, 4));
    }
    Ok((read_wide(2, 6)?, 8))
}

/// Parses one graph6 record. A leading `>>graph6<<` header and a trailing
/// newline are tolerated.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let base = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let mut body = &text[base..];
    while let [rest @ .., b'\n' | b'\r'] = body {
        body = rest;
    }
    let shift = |e: Graph6Error| match e {
        Graph6Error::InvalidByte { offset, byte } => Graph6Error::InvalidByte {
            offset: offset + base,
            byte,
        },
        Graph6Error::Truncated { offset, expected } => Graph6Error::Truncated {
            offset: offset + base,
            expected: expected + base,
        },
        Graph6Error::TrailingData { offset } => Graph6Error::TrailingData {
            offset: offset + base,
        },
        other => other,
    };
    match body.first() {
        None => return Err(Graph6Error::Empty),
        Some(b'&') => return Err(Graph6Error::Digraph6),
        Some(b':') => return Err(Graph6Error::Sparse6),
        _ => {}
    }
    decode_body(body).map_err(shift)
}

fn decode_body(body: &[u8]) -> Result<Graph, Graph6Error> {
    let (n, start) = read_order(body)?;
    let n = usize::try_from(n).map_err(|_| Graph6Error::UnsupportedOrder(n))?;
    let bits = n * n.saturating_sub(1) / 2;
    let nbytes = bits.div_ceil(6);
    let end = start + nbytes;
    if body.len() < end {
        return Err(Graph6Error::Truncated {
            offset: body.len(),
            expected: end,
        });
    }
    if body.len() > end {
        return Err(Graph6Error::TrailingData { offset: end });
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let word = sextet(body, start + k / 6)?;
            if word & (1 << (5 - k % 6)) != 0 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    // validate any remaining padding bytes too
    for i in start + k.div_ceil(6)..end {
        sextet(body, i)?;
    }
    Ok(g)
}

/// Canonical graph6 encoding (no header, no newline).
pub fn encode_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    let n64 = n as u64;
    if n64 > MAX_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n64));
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n64 >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n64 >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

/// One line of a graph6 file.
#[derive(Debug, Clone)]
pub struct Record {
    pub line: usize,
    pub text: String,
    pub graph: Result<Graph, Graph6Error>,
}

/// Reads every non-blank record of a graph6 stream. A header line (or a header
/// prefix on the first record) is skipped.
pub fn read_records<R: BufRead>(reader: R) -> std::io::Result<Vec<Record>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let mut text = line.trim_end_matches(['\r', '\n']);
        if let Some(rest) = text.strip_prefix(">>graph6<<") {
            text = rest;
        }
        if text.trim().is_empty() {
            continue;
        }
        out.push(Record {
            line: i + 1,
            text: text.to_string(),
            graph: parse_graph6(text.as_bytes()),
        });
    }
    Ok(out)
}
