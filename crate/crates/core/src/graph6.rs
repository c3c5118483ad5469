//! The graph6 ASCII encoding for simple undirected graphs.
//!
//! One graph per line: a length header (1, 4, or 8 bytes), then the upper
//! triangle of the adjacency matrix in column order (`x01 x02 x12 x03 ...`),
//! packed 6 bits per printable byte with offset 63. An optional
//! `>>graph6<<` prefix is tolerated on input and never written.

use thiserror::Error;

use crate::graph::{CubicGraph, GraphError};

/// Parse failures, with the byte offset into the input line where relevant.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {offset}: 0x{byte:02x} outside graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("byte {offset}: truncated order header")]
    TruncatedHeader { offset: usize },
    #[error("order {0} exceeds supported maximum {1}")]
    OrderTooLarge(u64, u64),
    #[error("byte {offset}: adjacency data ends early, need {need} bits")]
    TruncatedBody { offset: usize, need: usize },
    #[error("byte {offset}: trailing data after adjacency bits")]
    TrailingData { offset: usize },
    #[error("byte {offset}: nonzero padding bits")]
    NonzeroPadding { offset: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Orders above this are rejected; the toolkit works at desk scale.
pub const MAX_ORDER: u64 = 100_000;

/// Parses one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(line: &str) -> Result<CubicGraph, Graph6Error> {
    let line = line.trim_end_matches(['\r', '\n']);
    let rest = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let skipped = line.len() - rest.len();
    let bytes = rest.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let at = |i: usize| i + skipped;

    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { offset: at(i), byte: b });
        }
    }

    // Order header: n, or 126 n n n, or 126 126 n n n n n n (6 bits each).
    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as u64, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader { offset: at(bytes.len()) });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64);
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(Graph6Error::TruncatedHeader { offset: at(bytes.len()) });
        }
        let n = bytes[2..8]
            .iter()
            .fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64);
        (n, 8)
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(n, MAX_ORDER));
    }
    let n = n as u32;

    let nbits = (n as usize) * (n as usize - if n == 0 { 0 } else { 1 }) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos < nbytes {
        return Err(Graph6Error::TruncatedBody {
            offset: at(bytes.len()),
            need: nbits - 6 * (bytes.len() - pos),
        });
    }
    if bytes.len() - pos > nbytes {
        return Err(Graph6Error::TrailingData { offset: at(pos + nbytes) });
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[pos + bit / 6] - 63;
            if byte & (1 << (5 - bit % 6)) != 0 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    // Padding bits must be zero.
    while bit < 6 * nbytes {
        let byte = bytes[pos + bit / 6] - 63;
        if byte & (1 << (5 - bit % 6)) != 0 {
            return Err(Graph6Error::NonzeroPadding { offset: at(pos + bit / 6) });
        }
        bit += 1;
    }
    pos += nbytes;
    debug_assert_eq!(pos, bytes.len());

    Ok(CubicGraph::from_edges(n, edges)?)
}

/// Serializes a graph as one graph6 line (without trailing newline).
pub fn write_graph6(g: &CubicGraph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if (n as u64) <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| 63 + ((n >> (6 * i)) & 63) as u8));
    } else {
        out.push(126);
        out.push(126);
        out.extend((0..6).rev().map(|i| 63 + ((n as u64 >> (6 * i)) & 63) as u8));
    }
    let nbits = (n as usize) * (n as usize).saturating_sub(1) / 2;
    let mut body = vec![0u8; nbits.div_ceil(6)];
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                body[bit / 6] |= 1 << (5 - bit % 6);
            }
            bit += 1;
        }
    }
    out.extend(body.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses every nonempty, non-comment line of a graph6 file body.
///
/// Errors carry the 1-based line number alongside the parse failure.
pub fn parse_graph6_lines(input: &str) -> Result<Vec<CubicGraph>, (usize, Graph6Error)> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(parse_graph6(t).map_err(|e| (i + 1, e))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_c_tilde() {
        let g = CubicGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(write_graph6(&g), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), g);
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), g);
    }

    #[test]
    fn trivial_orders() {
        for n in 0..3u32 {
            let g = CubicGraph::from_edges(n, []).unwrap();
            assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn long_order_header_round_trips() {
        // A 63-vertex graph forces the 4-byte header.
        let edges: Vec<_> = (0..62).map(|i| (i, i + 1)).collect();
        let g = CubicGraph::from_edges(63, edges).unwrap();
        let s = write_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(parse_graph6("").unwrap_err(), Graph6Error::Empty);
        assert_eq!(
            parse_graph6("C \u{7f}").unwrap_err(),
            Graph6Error::InvalidByte { offset: 1, byte: b' ' }
        );
        assert!(matches!(parse_graph6("C").unwrap_err(), Graph6Error::TruncatedBody { .. }));
        assert_eq!(parse_graph6("C~~").unwrap_err(), Graph6Error::TrailingData { offset: 2 });
        // C5 needs 10 bits => 2 padding bits; corrupt the last one (bit 0 of
        // the final 6-bit group, i.e. of the byte value minus 63).
        let c5 = CubicGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let s = write_graph6(&c5);
        let mut bad = s.into_bytes();
        let last = bad.len() - 1;
        bad[last] = ((bad[last] - 63) | 1) + 63;
        assert_eq!(
            parse_graph6(std::str::from_utf8(&bad).unwrap()).unwrap_err(),
            Graph6Error::NonzeroPadding { offset: last }
        );
        assert!(matches!(parse_graph6("~").unwrap_err(), Graph6Error::TruncatedHeader { .. }));
        // Offsets are relative to the whole line, including the optional header.
        assert_eq!(
            parse_graph6(">>graph6<<C \u{7f}").unwrap_err(),
            Graph6Error::InvalidByte { offset: 11, byte: b' ' }
        );
    }

    #[test]
    fn line_reader_reports_line_numbers() {
        let graphs = parse_graph6_lines("# comment\nC~\n\nC~\n").unwrap();
        assert_eq!(graphs.len(), 2);
        let err = parse_graph6_lines("C~\nC~~\n").unwrap_err();
        assert_eq!(err.0, 2);
    }
}
