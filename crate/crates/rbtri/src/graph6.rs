//! graph6 encoding plus a plain-text adjacency fallback.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! ((0,1), (0,2), (1,2), (0,3), ...) into 6-bit groups, most significant bit
//! first, each group offset by 63 into printable ASCII. Orders up to 62 use a
//! single header byte `n + 63`; 63 and 64 use the `~` four-byte header.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // 18-bit big-endian order, split into three 6-bit groups.
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("invalid graph6 byte {b}")));
        }
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Parse("unsupported graph6 size header".into()));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Parse(format!(
            "graph6 order {n} out of supported range 1..={MAX_VERTICES}"
        )));
    }
    let nbits = n * (n - 1) / 2;
    let expect = nbits.div_ceil(6);
    if body.len() != expect {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {expect} for order {n}",
            body.len()
        )));
    }
    let mut g = Graph::new(n)?;
    let mut pos = 0usize;
    for j in 1..n {
        for i in 0..j {
            let bit = (body[pos / 6] - 63) >> (5 - pos % 6) & 1;
            if bit == 1 {
                g.add_edge(i, j)?;
            }
            pos += 1;
        }
    }
    // Padding bits must be zero for a bit-exact representation.
    while pos < expect * 6 {
        if (body[pos / 6] - 63) >> (5 - pos % 6) & 1 != 0 {
            return Err(Error::Parse("nonzero graph6 padding bits".into()));
        }
        pos += 1;
    }
    Ok(g)
}

/// Plain-text fallback: first non-empty line is the vertex count, each
/// following non-empty line is one edge `u v` with 0-based labels.
pub fn from_adjacency_text(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty adjacency text".into()))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count line {first:?}")))?;
    let mut g = Graph::new(n)?;
    for line in lines {
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(Error::Parse(format!("bad edge line {line:?}"))),
        };
        let u: usize = u
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex in line {line:?}")))?;
        let v: usize = v
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex in line {line:?}")))?;
        g.add_edge(u, v)
            .map_err(|e| Error::Parse(format!("edge {u} {v}: {e}")))?;
    }
    Ok(g)
}

pub fn to_adjacency_text(g: &Graph) -> String {
    let mut s = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parse a graph from either format: a single leading integer line selects
/// the adjacency format, anything else is treated as graph6.
pub fn parse_auto(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::Parse("empty graph input".into()))?;
    if first.chars().all(|c| c.is_ascii_digit()) {
        from_adjacency_text(text)
    } else {
        from_graph6(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn known_encodings() {
        // 5 vertices, edges (0,2), (0,4), (1,3), (3,4).
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        let h = from_graph6("DQc").unwrap();
        assert_eq!(g, h);

        // K4 is the all-ones triangle on 4 vertices.
        assert_eq!(to_graph6(&named::complete(4)), "C~");
        assert_eq!(from_graph6("C~").unwrap(), named::complete(4));

        // Single vertex, no bits.
        assert_eq!(to_graph6(&Graph::new(1).unwrap()), "@");
    }

    #[test]
    fn roundtrip_various() {
        for g in [
            named::octahedron(),
            named::petersen(),
            named::cycle(7),
            named::complete_bipartite(3, 4),
            Graph::new(2).unwrap(),
        ] {
            let enc = to_graph6(&g);
            assert_eq!(from_graph6(&enc).unwrap(), g, "roundtrip of {enc}");
        }
    }

    #[test]
    fn large_order_header() {
        let g = named::complete(63);
        let enc = to_graph6(&g);
        assert!(enc.starts_with('~'));
        assert_eq!(from_graph6(&enc).unwrap(), g);
        let g64 = named::cycle(64);
        assert_eq!(from_graph6(&to_graph6(&g64)).unwrap(), g64);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D").is_err()); // truncated body
        assert!(from_graph6("C~~").is_err()); // oversized body
        assert!(from_graph6("D\u{7}abc").is_err()); // invalid byte
        // C? is the empty graph on 4 vertices; padding abuse C?? is too long.
        assert!(from_graph6("C??").is_err());
    }

    #[test]
    fn optional_header_prefix() {
        let g = named::complete(4);
        assert_eq!(from_graph6(">>graph6<<C~").unwrap(), g);
    }

    #[test]
    fn adjacency_text_roundtrip() {
        let g = named::octahedron();
        let text = to_adjacency_text(&g);
        assert_eq!(from_adjacency_text(&text).unwrap(), g);
        assert_eq!(parse_auto(&text).unwrap(), g);
        assert_eq!(parse_auto("C~").unwrap(), named::complete(4));
    }

    #[test]
    fn adjacency_text_errors() {
        assert!(from_adjacency_text("").is_err());
        assert!(from_adjacency_text("3\n0 1 2\n").is_err());
        assert!(from_adjacency_text("3\n0 x\n").is_err());
        assert!(from_adjacency_text("3\n0 5\n").is_err());
    }
}
