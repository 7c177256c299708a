//! graph6 text encoding, short form only (`n <= 62`).
//!
//! Byte 0 is `n + 63`. The upper triangle is read column by column,
//! `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per byte (most
//! significant first), each byte offset by 63, zero-padded at the end.

use super::Graph;
use crate::error::{Error, Result};

pub const MAX_GRAPH6_N: usize = 62;

const OFFSET: u8 = 63;

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    let err = |offset: usize, reason: &str| Error::Graph6 {
        offset,
        reason: reason.to_string(),
    };
    let &first = bytes.first().ok_or_else(|| err(0, "empty input"))?;
    if !(OFFSET..=126).contains(&first) {
        return Err(err(0, &format!("byte {first} outside 63..=126")));
    }
    if first == 126 {
        return Err(err(0, "long-form size prefix is not supported"));
    }
    let n = (first - OFFSET) as usize;
    let expected = body_len(n);
    let body = &bytes[1..];
    for (i, &b) in body.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(err(i + 1, &format!("byte {b} outside 63..=126")));
        }
    }
    if body.len() < expected {
        return Err(err(
            bytes.len(),
            &format!("truncated body: expected {expected} bytes, found {}", body.len()),
        ));
    }
    if body.len() > expected {
        return Err(err(1 + expected, "trailing bytes after graph body"));
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    // padding bits must be zero for the encoding to be canonical
    if !k.is_multiple_of(6) {
        let last = body[k / 6] - OFFSET;
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(err(k / 6 + 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_GRAPH6_N {
        return Err(Error::UnsupportedSize {
            n,
            limit: MAX_GRAPH6_N,
        });
    }
    let mut body = vec![0u8; body_len(n)];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                body[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + body.len());
    out.push((n as u8 + OFFSET) as char);
    out.extend(body.into_iter().map(|b| (b + OFFSET) as char));
    Ok(out)
}
