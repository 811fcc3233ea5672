//! graph6 interchange format: 6-bit printable chunks encoding the vertex
//! count followed by the column-major upper triangle of the adjacency
//! matrix. Byte-exact round trips; every defect reports its byte offset.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

const OFFSET: u8 = 63;
const MAX: u8 = 126;

/// Decode one graph from a bare graph6 line (no trailing newline).
pub fn from_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|&b| !(OFFSET..=MAX).contains(&b)) {
        return Err(Error::parse(
            pos,
            format!("byte {} outside graph6 range 63..=126", bytes[pos]),
        ));
    }
    let (n, body_start) = decode_size(bytes)?;
    let pair_bits = n
        .checked_mul(n.saturating_sub(1))
        .map(|x| x / 2)
        .ok_or_else(|| Error::parse(0, "vertex count overflows pair index"))?;
    let body_len = pair_bits.div_ceil(6);
    let actual = bytes.len() - body_start;
    if actual != body_len {
        return Err(Error::parse(
            bytes.len().min(body_start + body_len),
            format!("body holds {actual} chunks, n={n} needs {body_len}"),
        ));
    }

    let mut builder = GraphBuilder::new(n);
    let mut bit_index = 0usize;
    'cols: for j in 1..n {
        for i in 0..j {
            let chunk = bytes[body_start + bit_index / 6] - OFFSET;
            let bit = chunk >> (5 - bit_index % 6) & 1;
            if bit == 1 {
                builder.add_edge(i, j);
            }
            bit_index += 1;
            if bit_index == pair_bits {
                break 'cols;
            }
        }
    }
    // padding bits after the triangle must be zero
    for pad in pair_bits..body_len * 6 {
        let chunk = bytes[body_start + pad / 6] - OFFSET;
        if chunk >> (5 - pad % 6) & 1 == 1 {
            return Err(Error::parse(
                body_start + pad / 6,
                "nonzero padding bit in final chunk",
            ));
        }
    }
    Ok(builder.build())
}

/// Encode a graph as one graph6 line (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = encode_size(n);
    let mut chunk = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((chunk + OFFSET) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + OFFSET) as char);
    }
    out
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize)> {
    match bytes {
        [] => Err(Error::parse(0, "empty input")),
        [b, ..] if *b < MAX => Ok(((*b - OFFSET) as usize, 1)),
        // 126: the next 3 chunks hold an 18-bit count; 126 126: 6 chunks, 36 bits
        [_, second, ..] if *second < MAX => {
            if bytes.len() < 4 {
                return Err(Error::parse(bytes.len(), "truncated 3-chunk size"));
            }
            let n = chunk_value(&bytes[1..4]);
            if n < 63 {
                return Err(Error::parse(1, "3-chunk size below 63 is non-canonical"));
            }
            Ok((n, 4))
        }
        _ => {
            if bytes.len() < 8 {
                return Err(Error::parse(bytes.len(), "truncated 6-chunk size"));
            }
            let n = chunk_value(&bytes[2..8]);
            if n < 258_048 {
                return Err(Error::parse(2, "6-chunk size below 258048 is non-canonical"));
            }
            Ok((n, 8))
        }
    }
}

fn chunk_value(chunks: &[u8]) -> usize {
    chunks
        .iter()
        .fold(0usize, |acc, &b| acc << 6 | (b - OFFSET) as usize)
}

fn encode_size(n: usize) -> String {
    let chunk = |value: usize, count: usize| -> String {
        (0..count)
            .rev()
            .map(|i| ((value >> (6 * i) & 63) as u8 + OFFSET) as char)
            .collect()
    };
    match n {
        0..=62 => chunk(n, 1),
        63..=258_047 => format!("~{}", chunk(n, 3)),
        _ => format!("~~{}", chunk(n, 6)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    /// Independent re-encoder used as the format oracle: builds the whole
    /// bit string as a Vec<bool> straight from the published description,
    /// with none of the incremental chunk state of `to_graph6`.
    pub(crate) fn reference_encode(g: &Graph) -> String {
        let n = g.n();
        assert!(n <= 62, "oracle covers the single-chunk size form");
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(g.has_edge(i, j));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        s.push((n as u8 + 63) as char);
        for group in bits.chunks(6) {
            let v = group
                .iter()
                .enumerate()
                .map(|(k, &b)| u8::from(b) << (5 - k))
                .sum::<u8>();
            s.push((v + 63) as char);
        }
        s
    }

    #[test]
    fn k2_and_its_complement() {
        let k2 = from_graph6("A_").unwrap();
        assert_eq!(k2.n(), 2);
        assert!(k2.has_edge(0, 1));
        assert_eq!(reference_encode(&k2), "A_");

        let e2 = from_graph6("A?").unwrap();
        assert_eq!(e2.n(), 2);
        assert_eq!(e2.edge_count(), 0);
        assert_eq!(reference_encode(&e2), "A?");
    }

    #[test]
    fn encode_agrees_with_reference_on_named_graphs() {
        for g in [
            Graph::cycle(5),
            Graph::complete(7),
            Graph::empty(9),
            Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).complement(),
        ] {
            let line = to_graph6(&g);
            assert_eq!(line, reference_encode(&g));
            assert_eq!(from_graph6(&line).unwrap(), g);
        }
    }

    #[test]
    fn rejects_out_of_range_byte_with_offset() {
        let err = from_graph6("A \n").unwrap_err();
        assert_eq!(err, Error::parse(1, "byte 32 outside graph6 range 63..=126"));
    }

    #[test]
    fn rejects_bad_length() {
        assert!(matches!(from_graph6("D"), Err(Error::Parse { .. })));
        assert!(matches!(from_graph6("A__"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_nonzero_padding() {
        // n=2 needs one pair bit; the other five must be zero. '@'+1 = 0b000001.
        let err = from_graph6("A@").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 1, .. }), "{err}");
    }

    #[test]
    fn three_chunk_size_round_trips() {
        let g = Graph::empty(63);
        let line = to_graph6(&g);
        assert!(line.starts_with('~'));
        assert_eq!(from_graph6(&line).unwrap(), g);

        let mut h = Graph::empty(100);
        h = h.complement(); // K_100
        assert_eq!(from_graph6(&to_graph6(&h)).unwrap(), h);
    }

    #[test]
    fn non_canonical_sizes_rejected() {
        // 3-chunk form encoding n=5 is invalid graph6
        assert!(from_graph6("~??F????").is_err());
    }

    #[test]
    fn exhaustive_round_trip_up_to_n5() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            for mask in 0..1u32 << pairs.len() {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges);
                let line = to_graph6(&g);
                assert_eq!(line, reference_encode(&g));
                assert_eq!(from_graph6(&line).unwrap(), g);
            }
        }
    }
}
