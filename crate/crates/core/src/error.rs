use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sample {value} at index {index} is outside the pixel range 0..=255")]
    RangeError { index: usize, value: i32 },

    #[error("plane of {width}x{height} has an odd or degenerate dimension")]
    OddDimension { width: usize, height: usize },

    #[error("cover plane has no 2x2 blocks")]
    EmptyCover,

    #[error("key was built against {key_nc} cover blocks but the cover has {cover_nc}")]
    KeyCoverMismatch { key_nc: usize, cover_nc: usize },

    #[error("value {value} does not fit the 16-bit {field} field")]
    Overflow { field: &'static str, value: usize },

    #[error("key container has a bad magic number")]
    BadMagic,

    #[error("unsupported key container version {0}")]
    BadVersion(u8),

    #[error("malformed key container header: {0}")]
    BadHeader(String),

    #[error("key container body is truncated: expected {expected} bytes, found {found}")]
    TruncatedBody { expected: usize, found: usize },

    #[error("key entry {entry} at position {position} is not below nc={nc}")]
    IndexOutOfRange {
        position: usize,
        entry: u32,
        nc: usize,
    },

    #[error("entropy-coded body is corrupt: {0}")]
    CorruptBody(String),

    #[error("payload of {needed} bits exceeds sub-band capacity of {capacity} bits")]
    PayloadTooLarge { needed: usize, capacity: usize },

    #[error("length prefix {declared} exceeds remaining capacity of {available} bits")]
    BadLengthPrefix { declared: usize, available: usize },

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("stego round trip did not stabilise after {iterations} iterations")]
    RoundTripUnstable { iterations: usize },
}

impl Error {
    /// True for failures that arise while reading a payload back out of an
    /// image: wrong passphrase, wrong domain or channels, or a plain image.
    pub fn is_decode_failure(&self) -> bool {
        matches!(
            self,
            Error::BadMagic
                | Error::BadVersion(_)
                | Error::BadHeader(_)
                | Error::TruncatedBody { .. }
                | Error::IndexOutOfRange { .. }
                | Error::CorruptBody(_)
                | Error::BadLengthPrefix { .. }
                | Error::KeyCoverMismatch { .. }
        )
    }
}
