//! graph6 encoding of simple undirected graphs.
//!
//! The vertex count is written as one byte `n + 63` for `n <= 62`, or as
//! `126` followed by three 6-bit groups for `n <= 258047`. The upper
//! triangle of the adjacency matrix follows column by column (`(0,1)`,
//! `(0,2)`, `(1,2)`, `(0,3)`, ...), packed six bits per byte, big-endian,
//! zero-padded, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const MAX_ORDER: usize = 258_047;
const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= MAX_ORDER, "graph6 supports at most {MAX_ORDER} vertices");
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses one graph6 string. A leading `>>graph6<<` header and trailing
/// line terminators are accepted; offsets in errors count from the start of
/// `text`.
pub fn decode(text: &str) -> Result<Graph> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = text.strip_prefix(HEADER) {
        bytes = rest.as_bytes();
        base = HEADER.len();
    }
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(err(base, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(base + i, format!("invalid byte 0x{b:02x}")));
        }
    }
    let (n, body_start) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(err(base + bytes.len(), "truncated vertex count"));
        }
        if bytes[1] == 126 {
            return Err(err(base + 1, "vertex counts above 258047 are not supported"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n < 63 {
            return Err(err(base, format!("long-form vertex count {n} should use the short form")));
        }
        (n, 4)
    };
    let body = &bytes[body_start..];
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        let at = base + body_start + body.len().min(expected);
        return Err(err(
            at,
            format!("expected {expected} data bytes for {n} vertices, found {}", body.len()),
        ));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(base + body_start + expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}
