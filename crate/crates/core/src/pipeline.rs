//! End-to-end embedding and extraction of two grey secrets in one colour
//! cover, in the RGB domain or the YCbCr domain.
//!
//! Per carrier channel: one level of IWT on the channel and on the secret,
//! a block-matching key from the two LL bands, and the sealed key written
//! into bit 3 of the channel's LH/HL/HH coefficients. Only the keys travel
//! in the image; extraction rebuilds each secret from the stego LL band.
//!
//! Clamping to 8-bit pixels and the YCbCr -> RGB -> YCbCr round trip can
//! move coefficients after embedding. In the RGB domain the detail bands are
//! nudged near any out-of-range pixel until the inverse transform needs no
//! clamping at all, so LL and the payload survive exactly. In the YCbCr
//! domain the stego image is re-analysed and the coefficient error fed back
//! into the next render, for at most [`MAX_REPAIR_ITERATIONS`] rounds. Either
//! way a cover that cannot hold the payload is an error, never a silently
//! corrupted key.

use std::fmt;
use std::str::FromStr;

use crate::bitplane::{self, EmbedMode, Payload};
use crate::blockmatch::{self, MatchKey};
use crate::colorspace::{rgb_to_ycbcr, ycbcr_to_rgb, YcbcrImage};
use crate::error::{Error, Result};
use crate::image::{Channel, ChannelPair, ImagePlane, RgbImage};
use crate::iwt::{self, SubBands};
use crate::keycodec::{self, CipherSpec};
use crate::repair;

pub const MAX_REPAIR_ITERATIONS: usize = 8;
const MAX_RANGE_SWEEPS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Rgb,
    Ycbcr,
}

impl Domain {
    pub fn embed_mode(self) -> EmbedMode {
        match self {
            Domain::Rgb => EmbedMode::Plain,
            Domain::Ycbcr => EmbedMode::Centered,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Rgb => "rgb",
            Domain::Ycbcr => "ycbcr",
        })
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rgb" => Ok(Domain::Rgb),
            "ycbcr" => Ok(Domain::Ycbcr),
            other => Err(format!("unknown domain '{other}', expected rgb or ycbcr")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EmbedRequest {
    pub cover: RgbImage,
    pub secret1: ImagePlane,
    pub secret2: ImagePlane,
    pub passphrase: Vec<u8>,
    pub domain: Domain,
    /// Carrier channels; only consulted in the RGB domain.
    pub channels: ChannelPair,
}

impl EmbedRequest {
    pub fn new(
        cover: RgbImage,
        secret1: ImagePlane,
        secret2: ImagePlane,
        passphrase: impl AsRef<[u8]>,
        domain: Domain,
    ) -> Self {
        Self {
            cover,
            secret1,
            secret2,
            passphrase: passphrase.as_ref().to_vec(),
            domain,
            channels: ChannelPair::default(),
        }
    }

    pub fn with_channels(mut self, channels: ChannelPair) -> Self {
        self.channels = channels;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    pub stego: RgbImage,
    pub key1: MatchKey,
    pub key2: MatchKey,
    /// Repair rounds needed before the payload read back exactly: range
    /// sweeps in the RGB domain, feedback rounds in the YCbCr domain.
    pub repair_iterations: usize,
}

#[derive(Debug, Clone)]
pub struct ExtractResult {
    pub secret1: ImagePlane,
    pub secret2: ImagePlane,
    pub key1: MatchKey,
    pub key2: MatchKey,
}

pub fn embed(req: &EmbedRequest) -> Result<Embedding> {
    match req.domain {
        Domain::Rgb => embed_rgb(req),
        Domain::Ycbcr => embed_ycbcr(req),
    }
}

pub fn extract(
    stego: &RgbImage,
    passphrase: &[u8],
    domain: Domain,
    channels: ChannelPair,
) -> Result<ExtractResult> {
    match domain {
        Domain::Rgb => extract_rgb(stego, passphrase, channels),
        Domain::Ycbcr => extract_ycbcr(stego, passphrase),
    }
}

/// Target coefficients for one carrier: its sub-bands with the sealed key
/// written into the high bands.
struct Carrier {
    target: SubBands,
    payload: Payload,
    key: MatchKey,
}

fn prepare_carrier(
    plane: &ImagePlane,
    secret: &ImagePlane,
    cipher: &CipherSpec,
    mode: EmbedMode,
) -> Result<Carrier> {
    let sb = iwt::forward(plane)?;
    let secret_ll = iwt::forward(secret)?.ll;
    secret_ll.require_even()?;

    let nc = (sb.ll.width() / 2) * (sb.ll.height() / 2);
    let ns = (secret_ll.width() / 2) * (secret_ll.height() / 2);
    if ns > nc {
        return Err(Error::CapacityExceeded(format!(
            "secret of {}x{} needs {ns} blocks but the cover LL only has {nc}",
            secret.width(),
            secret.height()
        )));
    }

    let key = blockmatch::build_key(&sb.ll, &secret_ll)?;
    let payload = Payload::from_bytes(&keycodec::seal(&key, cipher)?);
    let target = bitplane::embed(&sb, &payload, mode).map_err(|e| match e {
        Error::PayloadTooLarge { needed, capacity } => Error::CapacityExceeded(format!(
            "sealed key needs {needed} bits but the high bands hold {capacity}"
        )),
        other => other,
    })?;
    Ok(Carrier {
        target,
        payload,
        key,
    })
}

fn validate(req: &EmbedRequest) -> Result<()> {
    let (w, h) = req.cover.dims();
    if w < 2 || h < 2 || w % 2 != 0 || h % 2 != 0 {
        return Err(Error::OddDimension {
            width: w,
            height: h,
        });
    }
    for secret in [&req.secret1, &req.secret2] {
        if !secret.is_pixel_range() {
            return Err(Error::CapacityExceeded(
                "secret samples must lie in 0..=255".into(),
            ));
        }
        if secret.width() > w / 2 || secret.height() > h / 2 {
            return Err(Error::CapacityExceeded(format!(
                "secret of {}x{} exceeds half the {w}x{h} cover",
                secret.width(),
                secret.height()
            )));
        }
        if secret.width() % 4 != 0 || secret.height() % 4 != 0 {
            return Err(Error::OddDimension {
                width: secret.width(),
                height: secret.height(),
            });
        }
    }
    Ok(())
}

/// True if `observed` carries exactly `payload`.
fn payload_intact(observed: &SubBands, payload: &Payload) -> bool {
    matches!(bitplane::extract(observed), Ok(p) if &p == payload)
}

/// `input += target - observed`, over the first `limit` high-band
/// coefficients in traversal order, or everywhere (LL included) when `limit`
/// is `None`.
fn feed_back(input: &mut SubBands, target: &SubBands, observed: &SubBands, limit: Option<usize>) {
    let pairs = [
        (&mut input.ll, &target.ll, &observed.ll),
        (&mut input.lh, &target.lh, &observed.lh),
        (&mut input.hl, &target.hl, &observed.hl),
        (&mut input.hh, &target.hh, &observed.hh),
    ];
    let mut budget = limit.unwrap_or(usize::MAX);
    for (band, (x, t, o)) in pairs.into_iter().enumerate() {
        if band == 0 && limit.is_some() {
            continue;
        }
        for ((xi, &ti), &oi) in x.samples_mut().iter_mut().zip(t.samples()).zip(o.samples()) {
            if budget == 0 {
                return;
            }
            *xi += ti - oi;
            budget -= 1;
        }
    }
}

/// Renders one RGB carrier so its LL band and payload bits read back
/// exactly from the 8-bit pixels.
fn render_rgb_carrier(carrier: &Carrier) -> Result<(ImagePlane, usize)> {
    repair::fit_to_pixel_range(
        &carrier.target,
        carrier.payload.embedded_bits(),
        MAX_RANGE_SWEEPS,
    )
}

pub fn embed_rgb(req: &EmbedRequest) -> Result<Embedding> {
    validate(req)?;
    let cipher = CipherSpec::new(&req.passphrase);
    let (c1, c2) = (req.channels.first(), req.channels.second());

    let build = |channel: Channel, secret: &ImagePlane| -> Result<(Carrier, ImagePlane, usize)> {
        let carrier = prepare_carrier(
            req.cover.channel(channel),
            secret,
            &cipher,
            EmbedMode::Plain,
        )?;
        let (plane, iterations) = render_rgb_carrier(&carrier)?;
        Ok((carrier, plane, iterations))
    };
    let (first, second) = rayon::join(|| build(c1, &req.secret1), || build(c2, &req.secret2));
    let (k1, p1, it1) = first?;
    let (k2, p2, it2) = second?;

    let stego = req.cover.with_channel(c1, p1)?.with_channel(c2, p2)?;
    Ok(Embedding {
        stego,
        key1: k1.key,
        key2: k2.key,
        repair_iterations: it1.max(it2),
    })
}

fn open_payload(observed: &SubBands, cipher: &CipherSpec) -> Result<MatchKey> {
    let payload = bitplane::extract(observed)?;
    if payload.bit_len() % 8 != 0 {
        return Err(Error::BadHeader(format!(
            "payload of {} bits is not a whole number of bytes",
            payload.bit_len()
        )));
    }
    keycodec::open(payload.as_bytes(), cipher)
}

fn recover(plane: &ImagePlane, cipher: &CipherSpec) -> Result<(ImagePlane, MatchKey)> {
    let sb = iwt::forward(plane)?;
    let key = open_payload(&sb, cipher)?;
    let secret = blockmatch::rebuild_secret(&blockmatch::reconstruct_ll(&sb.ll, &key)?)?;
    Ok((secret, key))
}

pub fn extract_rgb(
    stego: &RgbImage,
    passphrase: &[u8],
    channels: ChannelPair,
) -> Result<ExtractResult> {
    let cipher = CipherSpec::new(passphrase);
    let (secret1, key1) = recover(stego.channel(channels.first()), &cipher)?;
    let (secret2, key2) = recover(stego.channel(channels.second()), &cipher)?;
    Ok(ExtractResult {
        secret1,
        secret2,
        key1,
        key2,
    })
}

pub fn embed_ycbcr(req: &EmbedRequest) -> Result<Embedding> {
    validate(req)?;
    let cipher = CipherSpec::new(&req.passphrase);
    let ycc = rgb_to_ycbcr(&req.cover);

    let (cb, cr) = rayon::join(
        || prepare_carrier(&ycc.cb, &req.secret1, &cipher, EmbedMode::Centered),
        || prepare_carrier(&ycc.cr, &req.secret2, &cipher, EmbedMode::Centered),
    );
    let (cb, cr) = (cb?, cr?);

    let mut cb_input = cb.target.clone();
    let mut cr_input = cr.target.clone();
    for iteration in 0..=MAX_REPAIR_ITERATIONS {
        let rendered = YcbcrImage::new(
            ycc.y.clone(),
            iwt::inverse(&cb_input)?,
            iwt::inverse(&cr_input)?,
        )?;
        let stego = ycbcr_to_rgb(&rendered);

        let back = rgb_to_ycbcr(&stego);
        let (cb_seen, cr_seen) = rayon::join(|| iwt::forward(&back.cb), || iwt::forward(&back.cr));
        let (cb_seen, cr_seen) = (cb_seen?, cr_seen?);
        let cb_ok = payload_intact(&cb_seen, &cb.payload);
        let cr_ok = payload_intact(&cr_seen, &cr.payload);
        if cb_ok && cr_ok {
            return Ok(Embedding {
                stego,
                key1: cb.key,
                key2: cr.key,
                repair_iterations: iteration,
            });
        }
        feed_back(
            &mut cb_input,
            &cb.target,
            &cb_seen,
            Some(cb.payload.embedded_bits()),
        );
        feed_back(
            &mut cr_input,
            &cr.target,
            &cr_seen,
            Some(cr.payload.embedded_bits()),
        );
    }
    Err(Error::RoundTripUnstable {
        iterations: MAX_REPAIR_ITERATIONS,
    })
}

pub fn extract_ycbcr(stego: &RgbImage, passphrase: &[u8]) -> Result<ExtractResult> {
    let cipher = CipherSpec::new(passphrase);
    let ycc = rgb_to_ycbcr(stego);
    let (secret1, key1) = recover(&ycc.cb, &cipher)?;
    let (secret2, key2) = recover(&ycc.cr, &cipher)?;
    Ok(ExtractResult {
        secret1,
        secret2,
        key1,
        key2,
    })
}

/// Best possible extraction of `secret`: its own LL band with the high
/// bands discarded. Block matching can only lose quality relative to this.
pub fn secret_ceiling(secret: &ImagePlane) -> Result<ImagePlane> {
    blockmatch::rebuild_secret(&iwt::forward(secret)?.ll)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::image::merge_channels;
    use crate::metrics;

    fn small_request(domain: Domain) -> EmbedRequest {
        let cover = corpus::peppers(64);
        let s1 = corpus::earth(32);
        let s2 = corpus::football(32);
        EmbedRequest::new(cover, s1, s2, "pass", domain)
    }

    #[test]
    fn rgb_round_trip_small() {
        let req = small_request(Domain::Rgb);
        let emb = embed_rgb(&req).unwrap();
        let out = extract_rgb(&emb.stego, b"pass", ChannelPair::GREEN_BLUE).unwrap();
        assert_eq!(out.key1, emb.key1);
        assert_eq!(out.key2, emb.key2);
        assert_eq!(
            emb.stego.channel(Channel::Red),
            req.cover.channel(Channel::Red)
        );
    }

    #[test]
    fn ycbcr_round_trip_small() {
        let req = small_request(Domain::Ycbcr);
        let emb = embed_ycbcr(&req).unwrap();
        let out = extract_ycbcr(&emb.stego, b"pass").unwrap();
        assert_eq!(out.key1, emb.key1);
        assert_eq!(out.key2, emb.key2);
    }

    #[test]
    fn other_channel_pairs() {
        for pair in [ChannelPair::RED_GREEN, ChannelPair::RED_BLUE] {
            let req = small_request(Domain::Rgb).with_channels(pair);
            let emb = embed_rgb(&req).unwrap();
            let out = extract_rgb(&emb.stego, b"pass", pair).unwrap();
            assert_eq!(out.key1, emb.key1);
            assert_eq!(
                emb.stego.channel(pair.untouched()),
                req.cover.channel(pair.untouched())
            );
        }
    }

    #[test]
    fn wrong_passphrase_fails() {
        let emb = embed_rgb(&small_request(Domain::Rgb)).unwrap();
        match extract_rgb(&emb.stego, b"nope", ChannelPair::GREEN_BLUE) {
            Err(e) => assert!(e.is_decode_failure(), "{e}"),
            Ok(out) => assert_ne!(out.key1, emb.key1),
        }
    }

    #[test]
    fn oversized_secret_rejected() {
        let mut req = small_request(Domain::Rgb);
        req.secret1 = ImagePlane::zeros(64, 64);
        assert!(matches!(embed_rgb(&req), Err(Error::CapacityExceeded(_))));
    }

    #[test]
    fn odd_secret_rejected() {
        let mut req = small_request(Domain::Ycbcr);
        req.secret2 = ImagePlane::zeros(30, 32);
        assert!(matches!(embed_ycbcr(&req), Err(Error::OddDimension { .. })));
    }

    #[test]
    fn grey_cover_ycbcr() {
        let grey = ImagePlane::from_fn(64, 64, |x, y| ((x * 3 + y * 2) % 256) as i32);
        let cover = merge_channels(grey.clone(), grey.clone(), grey).unwrap();
        let req = EmbedRequest::new(
            cover,
            corpus::earth(32),
            corpus::football(32),
            "g",
            Domain::Ycbcr,
        );
        let emb = embed_ycbcr(&req).unwrap();
        let out = extract_ycbcr(&emb.stego, b"g").unwrap();
        assert_eq!(out.key1, emb.key1);
        assert_eq!(out.key2, emb.key2);
    }

    #[test]
    fn ceiling_bounds_extraction() {
        let req = small_request(Domain::Rgb);
        let emb = embed_rgb(&req).unwrap();
        let out = extract_rgb(&emb.stego, b"pass", ChannelPair::GREEN_BLUE).unwrap();
        let ceiling = secret_ceiling(&req.secret1).unwrap();
        let got = metrics::psnr(&req.secret1, &out.secret1, 255.0).unwrap();
        let best = metrics::psnr(&req.secret1, &ceiling, 255.0).unwrap();
        assert!(got <= best + 1e-9);
    }

    #[test]
    fn domain_parsing() {
        assert_eq!("RGB".parse::<Domain>().unwrap(), Domain::Rgb);
        assert_eq!("ycbcr".parse::<Domain>().unwrap(), Domain::Ycbcr);
        assert!("hsv".parse::<Domain>().is_err());
        assert_eq!(Domain::Ycbcr.to_string(), "ycbcr");
    }
}
