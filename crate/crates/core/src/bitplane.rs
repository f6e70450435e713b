//! Payload embedding in bit 3 (the fourth bit plane) of the high-frequency
//! wavelet coefficients.
//!
//! Coefficients are visited LH in raster order, then HL, then HH, one payload
//! bit each. The stream starts with a 32-bit big-endian count of body bits.
//! Bits are written into the magnitude of a coefficient and the sign is kept
//! (zero counts as positive).

use crate::error::{Error, Result};
use crate::image::ImagePlane;
use crate::iwt::SubBands;

pub const PAYLOAD_BIT: u32 = 3;
const BIT_MASK: i32 = 1 << PAYLOAD_BIT;
const PREFIX_BITS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedMode {
    /// Only bit 3 of the magnitude is rewritten.
    Plain,
    /// Bit 3 carries the payload and bits 0..=2 are forced to `100`, so a
    /// later perturbation of up to +/-3 cannot change bit 3.
    Centered,
}

/// A bit string, MSB-first within each byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Payload {
    bytes: Vec<u8>,
    bit_len: usize,
}

impl Payload {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self {
            bytes: bytes.to_vec(),
            bit_len: bytes.len() * 8,
        }
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut bytes = Vec::new();
        let mut bit_len = 0usize;
        for b in bits {
            if bit_len.is_multiple_of(8) {
                bytes.push(0);
            }
            if b {
                *bytes.last_mut().expect("pushed above") |= 0x80 >> (bit_len % 8);
            }
            bit_len += 1;
        }
        Self { bytes, bit_len }
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.bytes[i / 8] >> (7 - i % 8)) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.bit_len).map(|i| self.bit(i))
    }

    /// The payload as bytes; a trailing partial byte is zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Bits needed to embed this payload including the length prefix.
    pub fn embedded_bits(&self) -> usize {
        PREFIX_BITS + self.bit_len
    }
}

pub fn capacity(sb: &SubBands) -> usize {
    sb.lh.len() + sb.hl.len() + sb.hh.len()
}

/// Writes `bit` into the magnitude of `c`.
#[inline]
pub fn embed_bit(c: i32, bit: bool, mode: EmbedMode) -> i32 {
    let magnitude = c.abs();
    let b = if bit { BIT_MASK } else { 0 };
    let m = match mode {
        EmbedMode::Plain => (magnitude & !BIT_MASK) | b,
        EmbedMode::Centered => (magnitude & !0xF) | b | 0b100,
    };
    if c < 0 {
        -m
    } else {
        m
    }
}

#[inline]
pub fn read_bit(c: i32) -> bool {
    c.abs() & BIT_MASK != 0
}

fn stream_bits(payload: &Payload) -> impl Iterator<Item = bool> + '_ {
    let len = payload.bit_len() as u32;
    (0..PREFIX_BITS)
        .map(move |i| (len >> (31 - i)) & 1 == 1)
        .chain(payload.bits())
}

pub fn embed(sb: &SubBands, payload: &Payload, mode: EmbedMode) -> Result<SubBands> {
    let needed = payload.embedded_bits();
    let cap = capacity(sb);
    if needed > cap || u32::try_from(payload.bit_len()).is_err() {
        return Err(Error::PayloadTooLarge {
            needed,
            capacity: cap,
        });
    }
    let mut out = sb.clone();
    let mut bits = stream_bits(payload);
    let coeffs = out
        .lh
        .samples_mut()
        .iter_mut()
        .chain(out.hl.samples_mut())
        .chain(out.hh.samples_mut());
    for (c, b) in coeffs.zip(&mut bits) {
        *c = embed_bit(*c, b, mode);
    }
    Ok(out)
}

fn traversal(sb: &SubBands) -> impl Iterator<Item = i32> + '_ {
    sb.high_bands()
        .into_iter()
        .flat_map(|band: &ImagePlane| band.samples().iter().copied())
}

pub fn extract(sb: &SubBands) -> Result<Payload> {
    let cap = capacity(sb);
    if cap < PREFIX_BITS {
        return Err(Error::BadLengthPrefix {
            declared: PREFIX_BITS,
            available: cap,
        });
    }
    let mut coeffs = traversal(sb);
    let declared = coeffs
        .by_ref()
        .take(PREFIX_BITS)
        .fold(0usize, |acc, c| (acc << 1) | usize::from(read_bit(c)));
    let available = cap - PREFIX_BITS;
    if declared > available {
        return Err(Error::BadLengthPrefix {
            declared,
            available,
        });
    }
    Ok(Payload::from_bits(coeffs.take(declared).map(read_bit)))
}
