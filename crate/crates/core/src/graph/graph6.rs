//! graph6 text encoding, bit-exact per the published format: upper
//! triangle scanned column by column, packed big-endian six bits per
//! printable byte offset by 63.

use super::Graph;
use crate::{Error, Result};

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n_vertices();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(63 + n as u8);
    } else if n <= 258_047 {
        bytes.push(126);
        bytes.push(63 + ((n >> 12) & 63) as u8);
        bytes.push(63 + ((n >> 6) & 63) as u8);
        bytes.push(63 + (n & 63) as u8);
    } else {
        bytes.push(126);
        bytes.push(126);
        for shift in (0..36).step_by(6).rev() {
            bytes.push(63 + ((n >> shift) & 63) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ascii")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte {b}")));
    }
    let vals: Vec<u64> = bytes.iter().map(|&b| (b - 63) as u64).collect();
    let (n, header) = if vals[0] != 63 {
        (vals[0] as usize, 1)
    } else if vals.len() >= 2 && vals[1] != 63 {
        if vals.len() < 4 {
            return Err(Error::Parse("truncated graph6 size header".into()));
        }
        (((vals[1] << 12) | (vals[2] << 6) | vals[3]) as usize, 4)
    } else {
        if vals.len() < 8 {
            return Err(Error::Parse("truncated graph6 size header".into()));
        }
        let n = vals[2..8].iter().fold(0u64, |acc, &v| (acc << 6) | v);
        (n as usize, 8)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expect = header + nbits.div_ceil(6);
    if vals.len() != expect {
        return Err(Error::Parse(format!(
            "graph6 length {} does not match order {n} (expected {expect} bytes)",
            vals.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut pos = 0usize;
    for j in 1..n {
        for i in 0..j {
            let v = vals[header + pos / 6];
            if (v >> (5 - pos % 6)) & 1 != 0 {
                g.set_edge(i, j);
            }
            pos += 1;
        }
    }
    // padding bits must be zero
    for extra in pos..(vals.len() - header) * 6 {
        let v = vals[header + extra / 6];
        if (v >> (5 - extra % 6)) & 1 != 0 {
            return Err(Error::Parse("nonzero graph6 padding".into()));
        }
    }
    Ok(g)
}
