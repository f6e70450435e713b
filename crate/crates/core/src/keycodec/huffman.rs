//! Order-0 canonical prefix coding over byte symbols.
//!
//! Coded layout: a 128-byte table of 256 four-bit code lengths (symbol `2k`
//! in the high nibble of byte `k`, `2k+1` in the low nibble, 0 = unused),
//! followed by the codes MSB-first, zero-padded to a byte boundary. The
//! decoded length is not stored; callers supply it.
//!
//! Code lengths come from a Huffman merge where nodes are ordered by
//! `(weight, id)`: leaves use their symbol as id, internal nodes take ids
//! 256, 257, ... in creation order. A lone symbol gets length 1. If any
//! length exceeds 15, every non-zero frequency is replaced by
//! `(f + 1) / 2` and the merge is rerun.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub const MAX_CODE_LEN: u8 = 15;
pub const TABLE_BYTES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompMode {
    Stored = 0,
    Coded = 1,
}

impl CompMode {
    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(CompMode::Stored),
            1 => Some(CompMode::Coded),
            _ => None,
        }
    }
}

fn huffman_lengths(freqs: &[u64; 256]) -> [u8; 256] {
    let mut lengths = [0u8; 256];
    let used: Vec<usize> = (0..256).filter(|&s| freqs[s] > 0).collect();
    match used.len() {
        0 => return lengths,
        1 => {
            lengths[used[0]] = 1;
            return lengths;
        }
        _ => {}
    }

    // parent[id] for leaves 0..256 and internal nodes 256..
    let mut parent: Vec<usize> = vec![usize::MAX; 256];
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> =
        used.iter().map(|&s| Reverse((freqs[s], s))).collect();
    while heap.len() > 1 {
        let Reverse((w1, a)) = heap.pop().expect("two nodes");
        let Reverse((w2, b)) = heap.pop().expect("two nodes");
        let id = parent.len();
        parent.push(usize::MAX);
        parent[a] = id;
        parent[b] = id;
        heap.push(Reverse((w1 + w2, id)));
    }
    for &s in &used {
        let mut depth = 0u32;
        let mut node = s;
        while parent[node] != usize::MAX {
            node = parent[node];
            depth += 1;
        }
        lengths[s] = depth.min(u32::from(u8::MAX)) as u8;
    }
    lengths
}

/// Length-limited code lengths for the given byte frequencies.
pub fn code_lengths(freqs: &[u64; 256]) -> [u8; 256] {
    let mut f = *freqs;
    loop {
        let lengths = huffman_lengths(&f);
        if lengths.iter().all(|&l| l <= MAX_CODE_LEN) {
            return lengths;
        }
        for v in f.iter_mut().filter(|v| **v > 0) {
            *v = (*v).div_ceil(2);
        }
    }
}

/// Canonical codes, ordered by `(length, symbol)`. Returns `(code, length)`
/// per symbol.
pub fn canonical_codes(lengths: &[u8; 256]) -> Result<[(u32, u8); 256]> {
    let mut order: Vec<usize> = (0..256).filter(|&s| lengths[s] > 0).collect();
    order.sort_by_key(|&s| (lengths[s], s));
    let mut codes = [(0u32, 0u8); 256];
    let mut code: u32 = 0;
    let mut prev_len = 0u8;
    for (n, &s) in order.iter().enumerate() {
        let len = lengths[s];
        if n > 0 {
            code += 1;
        }
        code <<= len - prev_len;
        if code >> len != 0 {
            return Err(Error::CorruptBody("over-subscribed code lengths".into()));
        }
        codes[s] = (code, len);
        prev_len = len;
    }
    Ok(codes)
}

struct BitWriter {
    out: Vec<u8>,
    acc: u8,
    filled: u8,
}

impl BitWriter {
    fn new() -> Self {
        Self {
            out: Vec::new(),
            acc: 0,
            filled: 0,
        }
    }

    fn push(&mut self, code: u32, len: u8) {
        for i in (0..len).rev() {
            self.acc = (self.acc << 1) | ((code >> i) & 1) as u8;
            self.filled += 1;
            if self.filled == 8 {
                self.out.push(self.acc);
                self.acc = 0;
                self.filled = 0;
            }
        }
    }

    fn finish(mut self) -> Vec<u8> {
        if self.filled > 0 {
            self.out.push(self.acc << (8 - self.filled));
        }
        self.out
    }
}

/// Table plus codes for `data` under `lengths`.
pub fn encode_with(lengths: &[u8; 256], data: &[u8]) -> Result<Vec<u8>> {
    let codes = canonical_codes(lengths)?;
    let mut out = Vec::with_capacity(TABLE_BYTES + data.len());
    for pair in lengths.chunks(2) {
        out.push((pair[0] << 4) | pair[1]);
    }
    let mut writer = BitWriter::new();
    for &b in data {
        let (code, len) = codes[usize::from(b)];
        if len == 0 {
            return Err(Error::CorruptBody(format!("symbol {b:#04x} has no code")));
        }
        writer.push(code, len);
    }
    out.extend(writer.finish());
    Ok(out)
}

pub fn compress(data: &[u8]) -> (CompMode, Vec<u8>) {
    if data.is_empty() {
        return (CompMode::Stored, Vec::new());
    }
    let mut freqs = [0u64; 256];
    for &b in data {
        freqs[usize::from(b)] += 1;
    }
    let coded = encode_with(&code_lengths(&freqs), data).expect("lengths derived from the data");
    if coded.len() < data.len() {
        (CompMode::Coded, coded)
    } else {
        (CompMode::Stored, data.to_vec())
    }
}

pub fn decompress(mode: CompMode, data: &[u8], out_len: usize) -> Result<Vec<u8>> {
    match mode {
        CompMode::Stored => {
            if data.len() != out_len {
                return Err(Error::CorruptBody(format!(
                    "stored body holds {} bytes, expected {out_len}",
                    data.len()
                )));
            }
            Ok(data.to_vec())
        }
        CompMode::Coded => decode_coded(data, out_len),
    }
}

fn decode_coded(data: &[u8], out_len: usize) -> Result<Vec<u8>> {
    if data.len() < TABLE_BYTES {
        return Err(Error::CorruptBody("code length table is truncated".into()));
    }
    let mut lengths = [0u8; 256];
    for (k, &b) in data[..TABLE_BYTES].iter().enumerate() {
        lengths[2 * k] = b >> 4;
        lengths[2 * k + 1] = b & 0x0F;
    }
    let codes = canonical_codes(&lengths)?;

    // first code, first index into `sorted`, and count per length
    let mut sorted: Vec<usize> = (0..256).filter(|&s| lengths[s] > 0).collect();
    sorted.sort_by_key(|&s| (lengths[s], s));
    let mut count = [0u32; 16];
    let mut first_code = [0u32; 16];
    let mut first_index = [0usize; 16];
    for (idx, &s) in sorted.iter().enumerate() {
        let len = usize::from(lengths[s]);
        if count[len] == 0 {
            first_code[len] = codes[s].0;
            first_index[len] = idx;
        }
        count[len] += 1;
    }

    let bits = &data[TABLE_BYTES..];
    let total_bits = bits.len() * 8;
    let mut pos = 0usize;
    let mut out = Vec::with_capacity(out_len);
    while out.len() < out_len {
        let mut code = 0u32;
        let mut len = 0usize;
        loop {
            if pos >= total_bits {
                return Err(Error::CorruptBody("coded body ended early".into()));
            }
            let bit = (bits[pos / 8] >> (7 - pos % 8)) & 1;
            pos += 1;
            code = (code << 1) | u32::from(bit);
            len += 1;
            if len > usize::from(MAX_CODE_LEN) {
                return Err(Error::CorruptBody("invalid code".into()));
            }
            if count[len] > 0 && code >= first_code[len] && code - first_code[len] < count[len] {
                let s = sorted[first_index[len] + (code - first_code[len]) as usize];
                out.push(s as u8);
                break;
            }
        }
    }
    Ok(out)
}
