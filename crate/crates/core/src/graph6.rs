//! graph6 text encoding, short form only (`n <= 62`).
//!
//! Layout: one header byte `n + 63`, then the upper triangle of the adjacency
//! matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed six
//! bits per byte (most significant first), zero padded, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_ORDER: usize = 62;

/// Encodes `g` using its vertex positions as labels.
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::Graph6(format!(
            "{n} vertices needs the long form, which is unsupported"
        )));
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge_at(i, j));
        }
    }
    let mut out = String::with_capacity(1 + bits.len().div_ceil(6));
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push((byte + 63) as char);
    }
    Ok(out)
}

/// Decodes a short-form graph6 string into a graph on `0..n`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&header, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if header == b'~' {
        return Err(Error::Graph6("long-form header is unsupported".into()));
    }
    if !(63..=126).contains(&header) {
        return Err(Error::Graph6(format!("malformed header byte {header:#04x}")));
    }
    let n = (header - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Error::Graph6(format!(
            "truncated bit field: expected {expected} bytes, got {}",
            body.len()
        )));
    }
    if body.len() > expected {
        return Err(Error::Graph6(format!(
            "{} trailing bytes after bit field",
            body.len() - expected
        )));
    }
    let mut adj = vec![Vec::new(); n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Graph6(format!("byte {byte:#04x} out of range")));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
            k += 1;
        }
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    Ok(Graph::from_index_adjacency(adj))
}
