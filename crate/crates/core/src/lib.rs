//! Hiding two grey-scale secret images in one colour cover image.
//!
//! The secrets themselves never enter the cover. Each secret's wavelet
//! approximation band is matched, 2x2 block by 2x2 block, against the
//! approximation band of one cover channel; the resulting index key is
//! serialized, compressed, XOR-encrypted and written into the fourth bit
//! plane of that channel's detail bands. Two carrier choices are provided:
//! two of the R/G/B channels ([`Domain::Rgb`]) or the Cb/Cr chroma planes
//! ([`Domain::Ycbcr`]).
//!
//! ```no_run
//! use stego_core::{corpus, embed, extract, ChannelPair, Domain, EmbedRequest};
//!
//! let req = EmbedRequest::new(corpus::peppers(256), corpus::earth(128), corpus::football(128), "hunter2", Domain::Ycbcr);
//! let out = embed(&req).unwrap();
//! let secrets = extract(&out.stego, b"hunter2", Domain::Ycbcr, ChannelPair::default()).unwrap();
//! assert_eq!(secrets.key1, out.key1);
//! ```

pub mod bitplane;
pub mod blockmatch;
pub mod colorspace;
pub mod corpus;
pub mod error;
pub mod image;
pub mod iwt;
pub mod keycodec;
pub mod metrics;
pub mod pipeline;
mod repair;

pub use blockmatch::MatchKey;
pub use error::{Error, Result};
pub use image::{Channel, ChannelPair, ImagePlane, RgbImage};
pub use pipeline::{embed, extract, Domain, EmbedRequest, Embedding, ExtractResult};
