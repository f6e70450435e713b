//! Byte container for a [`MatchKey`], with optional entropy coding and a
//! passphrase keystream on top.
//!
//! # Container layout
//!
//! All multi-byte fields are big-endian.
//!
//! | offset | size | field                                          |
//! |--------|------|------------------------------------------------|
//! | 0      | 2    | magic `"SK"` (`0x53 0x4B`)                     |
//! | 2      | 1    | version, always 1                              |
//! | 3      | 2    | `nc`, cover block count                        |
//! | 5      | 2    | secret blocks per row                          |
//! | 7      | 2    | secret blocks per column                       |
//! | 9      | 1    | index width, `max(1, ceil(log2(nc)))`          |
//! | 10     | 1    | compression mode (0 stored, 1 entropy coded)   |
//! | 11     | 4    | body length in bytes                           |
//! | 15     | ...  | body                                           |
//!
//! The stored body packs each entry MSB-first in `index width` bits, padded
//! with zeros to a whole byte. The coded body is the stored body run through
//! [`huffman::compress`].

pub mod cipher;
pub mod huffman;

pub use cipher::{decrypt, encrypt, CipherSpec};
pub use huffman::{compress, decompress, CompMode};

use crate::blockmatch::MatchKey;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 2] = *b"SK";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 15;

pub fn index_width(nc: usize) -> u8 {
    let mut width = 0u8;
    while (1usize << width) < nc {
        width += 1;
    }
    width.max(1)
}

fn u16_field(field: &'static str, value: usize) -> Result<u16> {
    u16::try_from(value).map_err(|_| Error::Overflow { field, value })
}

fn packed_len(entries: usize, width: u8) -> usize {
    (entries * usize::from(width)).div_ceil(8)
}

fn pack_indices(entries: &[u32], width: u8) -> Vec<u8> {
    let mut out = vec![0u8; packed_len(entries.len(), width)];
    let mut bit = 0usize;
    for &e in entries {
        for i in (0..width).rev() {
            if (e >> i) & 1 == 1 {
                out[bit / 8] |= 0x80 >> (bit % 8);
            }
            bit += 1;
        }
    }
    out
}

fn unpack_indices(body: &[u8], count: usize, width: u8) -> Vec<u32> {
    let mut bit = 0usize;
    (0..count)
        .map(|_| {
            let mut v = 0u32;
            for _ in 0..width {
                v = (v << 1) | u32::from((body[bit / 8] >> (7 - bit % 8)) & 1);
                bit += 1;
            }
            v
        })
        .collect()
}

fn write_container(key: &MatchKey, mode: CompMode, body: &[u8]) -> Result<Vec<u8>> {
    let nc = u16_field("nc", key.nc())?;
    let bx = u16_field("blocks_x", key.secret_blocks_x())?;
    let by = u16_field("blocks_y", key.secret_blocks_y())?;
    let body_len = u32::try_from(body.len()).map_err(|_| Error::Overflow {
        field: "body_len",
        value: body.len(),
    })?;
    let mut out = Vec::with_capacity(HEADER_LEN + body.len());
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&nc.to_be_bytes());
    out.extend_from_slice(&bx.to_be_bytes());
    out.extend_from_slice(&by.to_be_bytes());
    out.push(index_width(key.nc()));
    out.push(mode as u8);
    out.extend_from_slice(&body_len.to_be_bytes());
    out.extend_from_slice(body);
    Ok(out)
}

/// Container with a stored (uncompressed) body.
pub fn serialize(key: &MatchKey) -> Result<Vec<u8>> {
    let body = pack_indices(key.entries(), index_width(key.nc()));
    write_container(key, CompMode::Stored, &body)
}

/// Container whose body is entropy coded when that makes it smaller.
pub fn serialize_compressed(key: &MatchKey) -> Result<Vec<u8>> {
    let body = pack_indices(key.entries(), index_width(key.nc()));
    let (mode, body) = compress(&body);
    write_container(key, mode, &body)
}

pub fn deserialize(data: &[u8]) -> Result<MatchKey> {
    if data.len() < 2 || data[..2] != MAGIC {
        return Err(Error::BadMagic);
    }
    if data.len() < HEADER_LEN {
        return Err(Error::BadHeader(format!(
            "{} bytes is shorter than the header",
            data.len()
        )));
    }
    if data[2] != VERSION {
        return Err(Error::BadVersion(data[2]));
    }
    let be16 = |i: usize| usize::from(u16::from_be_bytes([data[i], data[i + 1]]));
    let nc = be16(3);
    let bx = be16(5);
    let by = be16(7);
    let width = data[9];
    let mode = CompMode::from_byte(data[10])
        .ok_or_else(|| Error::BadHeader(format!("unknown compression mode {}", data[10])))?;
    let body_len = u32::from_be_bytes([data[11], data[12], data[13], data[14]]) as usize;

    if nc == 0 {
        return Err(Error::BadHeader("nc is zero".into()));
    }
    if width != index_width(nc) {
        return Err(Error::BadHeader(format!(
            "index width {width} does not match nc={nc}"
        )));
    }
    let body = &data[HEADER_LEN..];
    if body.len() < body_len {
        return Err(Error::TruncatedBody {
            expected: body_len,
            found: body.len(),
        });
    }
    if body.len() > body_len {
        return Err(Error::BadHeader(format!(
            "{} trailing bytes after the body",
            body.len() - body_len
        )));
    }

    let count = bx * by;
    let packed = decompress(mode, body, packed_len(count, width))?;
    let entries = unpack_indices(&packed, count, width);
    MatchKey::new(entries, nc, bx, by)
}

/// Key to embeddable bytes: serialize, compress, encrypt.
pub fn seal(key: &MatchKey, cipher: &CipherSpec) -> Result<Vec<u8>> {
    Ok(encrypt(&serialize_compressed(key)?, cipher))
}

/// Inverse of [`seal`].
pub fn open(data: &[u8], cipher: &CipherSpec) -> Result<MatchKey> {
    deserialize(&decrypt(data, cipher))
}
