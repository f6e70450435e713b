//! Integer sample planes and three-channel colour images.
//!
//! Every grid in the crate, whether it holds pixels or wavelet coefficients,
//! is an [`ImagePlane`]: row-major, origin top-left, `i32` samples.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    samples: Vec<i32>,
}

impl ImagePlane {
    pub fn new(width: usize, height: usize, samples: Vec<i32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::DimensionMismatch(format!(
                "plane dimensions must be non-zero, got {width}x{height}"
            )));
        }
        if samples.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{} samples supplied for a {width}x{height} plane",
                samples.len()
            )));
        }
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    pub fn filled(width: usize, height: usize, value: i32) -> Self {
        assert!(width > 0 && height > 0, "plane dimensions must be non-zero");
        Self {
            width,
            height,
            samples: vec![value; width * height],
        }
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self::filled(width, height, 0)
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> i32) -> Self {
        assert!(width > 0 && height > 0, "plane dimensions must be non-zero");
        let mut samples = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                samples.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            samples,
        }
    }

    /// Build a plane from 8-bit samples, e.g. a decoded grey image.
    pub fn from_u8(width: usize, height: usize, data: &[u8]) -> Result<Self> {
        Self::new(width, height, data.iter().map(|&v| i32::from(v)).collect())
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> i32 {
        self.samples[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: i32) {
        self.samples[y * self.width + x] = value;
    }

    pub fn samples(&self) -> &[i32] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [i32] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<i32> {
        self.samples
    }

    pub fn row(&self, y: usize) -> &[i32] {
        &self.samples[y * self.width..(y + 1) * self.width]
    }

    /// Both dimensions even and at least two, as the single-level transform
    /// and the 2x2 block tiling require.
    pub fn require_even(&self) -> Result<()> {
        if self.width < 2
            || self.height < 2
            || !self.width.is_multiple_of(2)
            || !self.height.is_multiple_of(2)
        {
            return Err(Error::OddDimension {
                width: self.width,
                height: self.height,
            });
        }
        Ok(())
    }

    pub fn is_pixel_range(&self) -> bool {
        self.samples.iter().all(|&s| (0..=255).contains(&s))
    }

    /// Samples as bytes. Fails on the first sample outside 0..=255.
    pub fn to_u8(&self) -> Result<Vec<u8>> {
        self.samples
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                u8::try_from(value).map_err(|_| Error::RangeError { index, value })
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(i32) -> i32) -> Self {
        Self {
            width: self.width,
            height: self.height,
            samples: self.samples.iter().map(|&s| f(s)).collect(),
        }
    }
}

impl fmt::Debug for ImagePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ImagePlane({}x{}", self.width, self.height)?;
        if self.samples.len() <= 64 {
            write!(f, ", {:?}", self.samples)?;
        }
        write!(f, ")")
    }
}

pub fn clamp_to_pixel(p: &ImagePlane) -> ImagePlane {
    p.map(|s| s.clamp(0, 255))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    Red,
    Green,
    Blue,
}

impl Channel {
    pub fn letter(self) -> char {
        match self {
            Channel::Red => 'r',
            Channel::Green => 'g',
            Channel::Blue => 'b',
        }
    }
}

/// Two distinct carrier channels for the RGB-domain scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelPair {
    first: Channel,
    second: Channel,
}

impl ChannelPair {
    pub const GREEN_BLUE: ChannelPair = ChannelPair {
        first: Channel::Green,
        second: Channel::Blue,
    };
    pub const RED_GREEN: ChannelPair = ChannelPair {
        first: Channel::Red,
        second: Channel::Green,
    };
    pub const RED_BLUE: ChannelPair = ChannelPair {
        first: Channel::Red,
        second: Channel::Blue,
    };

    pub fn new(first: Channel, second: Channel) -> Option<Self> {
        (first != second).then_some(Self { first, second })
    }

    pub fn first(self) -> Channel {
        self.first
    }

    pub fn second(self) -> Channel {
        self.second
    }

    /// The channel carrying neither secret.
    pub fn untouched(self) -> Channel {
        [Channel::Red, Channel::Green, Channel::Blue]
            .into_iter()
            .find(|&c| c != self.first && c != self.second)
            .expect("pair of distinct channels leaves one over")
    }
}

impl Default for ChannelPair {
    fn default() -> Self {
        Self::GREEN_BLUE
    }
}

impl fmt::Display for ChannelPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first.letter(), self.second.letter())
    }
}

impl FromStr for ChannelPair {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let channel = |c: char| match c {
            'r' | 'R' => Ok(Channel::Red),
            'g' | 'G' => Ok(Channel::Green),
            'b' | 'B' => Ok(Channel::Blue),
            other => Err(format!("unknown channel '{other}'")),
        };
        let mut chars = s.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(a), Some(b), None) => ChannelPair::new(channel(a)?, channel(b)?)
                .ok_or_else(|| format!("channel pair '{s}' repeats a channel")),
            _ => Err(format!("channel pair must be two letters, got '{s}'")),
        }
    }
}

/// An 8-bit RGB image held as three planes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    r: ImagePlane,
    g: ImagePlane,
    b: ImagePlane,
}

impl RgbImage {
    pub fn width(&self) -> usize {
        self.r.width()
    }

    pub fn height(&self) -> usize {
        self.r.height()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.r.dims()
    }

    pub fn channel(&self, c: Channel) -> &ImagePlane {
        match c {
            Channel::Red => &self.r,
            Channel::Green => &self.g,
            Channel::Blue => &self.b,
        }
    }

    pub fn planes(&self) -> [&ImagePlane; 3] {
        [&self.r, &self.g, &self.b]
    }

    /// Returns a copy with channel `c` replaced.
    pub fn with_channel(&self, c: Channel, plane: ImagePlane) -> Result<Self> {
        let mut planes = [self.r.clone(), self.g.clone(), self.b.clone()];
        planes[c as usize] = plane;
        let [r, g, b] = planes;
        merge_channels(r, g, b)
    }

    /// Build from interleaved RGB bytes.
    pub fn from_interleaved(width: usize, height: usize, data: &[u8]) -> Result<Self> {
        if data.len() != width * height * 3 {
            return Err(Error::DimensionMismatch(format!(
                "{} bytes supplied for a {width}x{height} RGB image",
                data.len()
            )));
        }
        let pick = |k: usize| {
            data.iter()
                .skip(k)
                .step_by(3)
                .map(|&v| i32::from(v))
                .collect()
        };
        merge_channels(
            ImagePlane::new(width, height, pick(0))?,
            ImagePlane::new(width, height, pick(1))?,
            ImagePlane::new(width, height, pick(2))?,
        )
    }

    pub fn to_interleaved(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.r.len() * 3);
        for ((&r, &g), &b) in self
            .r
            .samples()
            .iter()
            .zip(self.g.samples())
            .zip(self.b.samples())
        {
            // merge_channels guarantees 0..=255
            out.extend_from_slice(&[r as u8, g as u8, b as u8]);
        }
        out
    }
}

pub fn split_channels(img: &RgbImage) -> (ImagePlane, ImagePlane, ImagePlane) {
    (img.r.clone(), img.g.clone(), img.b.clone())
}

pub fn merge_channels(r: ImagePlane, g: ImagePlane, b: ImagePlane) -> Result<RgbImage> {
    if r.dims() != g.dims() || r.dims() != b.dims() {
        return Err(Error::DimensionMismatch(format!(
            "channel planes are {:?}, {:?} and {:?}",
            r.dims(),
            g.dims(),
            b.dims()
        )));
    }
    for plane in [&r, &g, &b] {
        if let Some((index, &value)) = plane
            .samples()
            .iter()
            .enumerate()
            .find(|(_, &s)| !(0..=255).contains(&s))
        {
            return Err(Error::RangeError { index, value });
        }
    }
    Ok(RgbImage { r, g, b })
}
