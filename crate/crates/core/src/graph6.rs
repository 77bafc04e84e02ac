//! graph6 encoding for graphs on up to 64 vertices.
//!
//! The header is one byte `n + 63` for `n <= 62`, and `~` followed by three
//! bytes carrying `n` in 18 bits for `63 <= n <= 64`. The body is the upper
//! triangle of the adjacency matrix read column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`), packed big-endian into 6-bit groups,
//! each offset by 63 and zero-padded.

use crate::error::Graph6Error;
use crate::graph::{bit, Graph};

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

pub fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadCharacter { ch: b as char, pos });
        }
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::Length {
                expected: 4,
                found: bytes.len(),
            });
        }
        if bytes[1] == 126 {
            // 8-byte header form; always > 64 vertices
            return Err(Graph6Error::VertexCount(usize::MAX));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n == 0 || n > 64 {
        return Err(Graph6Error::VertexCount(n));
    }
    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            expected,
            found: body.len(),
        });
    }

    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for w in 1..n {
        for u in 0..w {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[u] |= bit(w);
                rows[w] |= bit(u);
            }
            k += 1;
        }
    }
    let total_bits = body.len() * 6;
    while k < total_bits {
        if (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
            return Err(Graph6Error::Padding);
        }
        k += 1;
    }
    Ok(Graph::from_adjacency(rows).expect("decoded rows are symmetric and loop-free"))
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + body_len(n));
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
    for w in 1..n {
        for u in 0..w {
            acc = (acc << 1) | g.has_edge(u, w) as u8;
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_c_tilde() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(encode_graph6(&k4), "C~");
        assert_eq!(decode_graph6("C~").unwrap(), k4);
    }

    #[test]
    fn empty_five_vertices() {
        let g = Graph::empty(5).unwrap();
        assert_eq!(encode_graph6(&g), "D??");
        assert_eq!(decode_graph6("D??").unwrap(), g);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1).unwrap();
        assert_eq!(encode_graph6(&g), "@");
        assert_eq!(decode_graph6("@").unwrap(), g);
    }

    #[test]
    fn hand_encoded_five_vertex_graph() {
        // edges 0-2, 0-4, 1-3, 3-4: bit stream 010010 1001(00)
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
    }

    #[test]
    fn long_header_for_63_and_64() {
        for n in [63, 64] {
            let mut g = Graph::empty(n).unwrap();
            g.add_edge(0, n - 1);
            g.add_edge(5, 17);
            let s = encode_graph6(&g);
            assert!(s.starts_with('~'));
            assert_eq!(s.len(), 4 + (n * (n - 1) / 2).div_ceil(6));
            assert_eq!(decode_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(decode_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(
            decode_graph6("C~~"),
            Err(Graph6Error::Length {
                expected: 1,
                found: 2
            })
        ));
        assert!(matches!(
            decode_graph6("C\x20"),
            Err(Graph6Error::BadCharacter { pos: 1, .. })
        ));
        // header for 65 vertices
        assert!(matches!(
            decode_graph6("~?@@"),
            Err(Graph6Error::VertexCount(65))
        ));
        // 'D' + 10 bits: padding bits set in the last group
        assert_eq!(decode_graph6("D?@"), Err(Graph6Error::Padding));
    }
}
