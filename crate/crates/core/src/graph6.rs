//! graph6 encoding (McKay's `formats.txt`).
//!
//! `N(n)` is one byte `n+63` for `n <= 62`, `126` followed by three 6-bit
//! groups for `n <= 258047`, and `126 126` followed by six groups beyond.
//! The upper triangle is written column by column (`x(0,1) x(0,2) x(1,2)
//! x(0,3) ...`), packed big-endian into 6-bit groups, zero padded, each
//! group offset by 63.

use thiserror::Error;

use crate::graph::{DenseGraph, GraphError, SmallGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte} at position {position} is outside the printable graph6 range 63..=126")]
    BadByte { position: usize, byte: u8 },
    #[error("graph6 body has {found} bytes, expected {expected} for {order} vertices")]
    Length { order: usize, expected: usize, found: usize },
    #[error("nonzero padding bits in the final graph6 byte")]
    Padding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const HEADER: &str = ">>graph6<<";

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
}

/// Encode from an order and an adjacency predicate.
pub fn encode_with(n: usize, has_edge: impl Fn(usize, usize) -> bool) -> String {
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decode into `(order, edges)` with `u < v`.
pub fn decode(s: &str) -> Result<(usize, Vec<(usize, usize)>), Graph6Error> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (position, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { position, byte });
        }
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::Length { order: 0, expected: 4, found: bytes.len() });
        }
        let n = bytes[1..4].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Graph6Error::Length { order: 0, expected: 8, found: bytes.len() });
        }
        let n = bytes[2..8].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
        (n, &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::Length { order: n, expected, found: body.len() });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding);
        }
    }
    edges.sort_unstable();
    Ok((n, edges))
}

impl SmallGraph {
    pub fn to_graph6(&self) -> String {
        encode_with(self.order(), |u, v| self.has_edge(u, v))
    }

    pub fn from_graph6(s: &str) -> Result<SmallGraph, Graph6Error> {
        let (n, edges) = decode(s)?;
        Ok(SmallGraph::from_edges(n, &edges)?)
    }
}

impl DenseGraph {
    pub fn to_graph6(&self) -> String {
        encode_with(self.order(), |u, v| self.has_edge(u, v))
    }

    pub fn from_graph6(s: &str) -> Result<DenseGraph, Graph6Error> {
        let (n, edges) = decode(s)?;
        Ok(DenseGraph::from_edges(n, &edges)?)
    }
}

/// Serde adapter storing a [`SmallGraph`] as its graph6 string.
pub mod as_graph6 {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::graph::SmallGraph;

    pub fn serialize<S: Serializer>(g: &SmallGraph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&g.to_graph6())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SmallGraph, D::Error> {
        let text = String::deserialize(d)?;
        SmallGraph::from_graph6(&text).map_err(D::Error::custom)
    }
}
