use std::fmt;
use std::io;

/// A request the tool refuses before doing any work.
#[derive(Debug)]
pub struct Invalid(pub String);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_DECODE: u8 = 4;

/// 2 for validation and capacity problems, 3 for file trouble, 4 when a
/// stego image does not decode.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<stego_core::Error>() {
            return if e.is_decode_failure() {
                EXIT_DECODE
            } else {
                EXIT_INVALID
            };
        }
        if cause.is::<Invalid>() {
            return EXIT_INVALID;
        }
        if cause.is::<io::Error>() || cause.is::<image::ImageError>() || cause.is::<csv::Error>() {
            return EXIT_IO;
        }
    }
    1
}
