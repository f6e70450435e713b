//! Passphrase keystream XOR.
//!
//! The keystream is SplitMix64 seeded with the 64-bit FNV-1a hash of the
//! passphrase, each output word emitted as eight little-endian bytes. This is
//! obfuscation with fixed constants so that every implementation produces the
//! same bytes; it is not a vetted cipher.

const FNV_OFFSET: u64 = 0xCBF2_9CE4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01B3;

pub fn fnv1a64(data: &[u8]) -> u64 {
    data.iter().fold(FNV_OFFSET, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(FNV_PRIME)
    })
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CipherSpec {
    passphrase: Vec<u8>,
}

impl CipherSpec {
    pub fn new(passphrase: impl AsRef<[u8]>) -> Self {
        Self {
            passphrase: passphrase.as_ref().to_vec(),
        }
    }

    pub fn keystream(&self, len: usize) -> Vec<u8> {
        let mut gen = SplitMix64::new(fnv1a64(&self.passphrase));
        let mut out = Vec::with_capacity(len + 8);
        while out.len() < len {
            out.extend_from_slice(&gen.next_u64().to_le_bytes());
        }
        out.truncate(len);
        out
    }
}

impl std::fmt::Debug for CipherSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("CipherSpec(..)")
    }
}

pub fn encrypt(data: &[u8], spec: &CipherSpec) -> Vec<u8> {
    data.iter()
        .zip(spec.keystream(data.len()))
        .map(|(&d, k)| d ^ k)
        .collect()
}

/// Same operation as [`encrypt`].
pub fn decrypt(data: &[u8], spec: &CipherSpec) -> Vec<u8> {
    encrypt(data, spec)
}
