//! RGB <-> YCbCr conversion with fixed integer rounding.
//!
//! Forward coefficients are the rationals `k/256`; inverse coefficients are
//! the three-decimal constants 1.371, 0.698, 0.336 and 1.732. Both directions
//! are evaluated in exact integer arithmetic and rounded once, half away from
//! zero. The inverse clamps to 0..=255. The forward direction leaves Cb and Cr
//! unclamped: they can reach -2 and 258 for saturated colours, and clamping
//! them would break the +/-2 round-trip bound.

use crate::error::{Error, Result};
use crate::image::{merge_channels, ImagePlane, RgbImage};

/// Luma and chroma planes. Y is always within 0..=255; Cb and Cr lie in
/// -2..=258.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YcbcrImage {
    pub y: ImagePlane,
    pub cb: ImagePlane,
    pub cr: ImagePlane,
}

impl YcbcrImage {
    pub fn new(y: ImagePlane, cb: ImagePlane, cr: ImagePlane) -> Result<Self> {
        if y.dims() != cb.dims() || y.dims() != cr.dims() {
            return Err(Error::DimensionMismatch(format!(
                "Y/Cb/Cr planes are {:?}, {:?} and {:?}",
                y.dims(),
                cb.dims(),
                cr.dims()
            )));
        }
        Ok(Self { y, cb, cr })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.y.dims()
    }
}

/// `num / den` rounded half away from zero, `den > 0`.
#[inline]
fn div_round(num: i64, den: i64) -> i64 {
    if num >= 0 {
        (num + den / 2) / den
    } else {
        -((-num + den / 2) / den)
    }
}

#[inline]
pub fn pixel_to_ycbcr(r: i32, g: i32, b: i32) -> (i32, i32, i32) {
    let (r, g, b) = (i64::from(r), i64::from(g), i64::from(b));
    let y = div_round(77 * r + 150 * g + 29 * b, 256);
    let cb = div_round(-44 * r - 87 * g + 131 * b + 128 * 256, 256);
    let cr = div_round(131 * r - 110 * g - 21 * b + 128 * 256, 256);
    (y.clamp(0, 255) as i32, cb as i32, cr as i32)
}

#[inline]
fn unclamped_rgb(y: i32, cb: i32, cr: i32) -> [i64; 3] {
    let (y, cb, cr) = (i64::from(y), i64::from(cb) - 128, i64::from(cr) - 128);
    [
        div_round(1000 * y + 1371 * cr, 1000),
        div_round(1000 * y - 698 * cr - 336 * cb, 1000),
        div_round(1000 * y + 1732 * cb, 1000),
    ]
}

#[inline]
pub fn pixel_to_rgb(y: i32, cb: i32, cr: i32) -> (i32, i32, i32) {
    let [r, g, b] = unclamped_rgb(y, cb, cr).map(|v| v.clamp(0, 255) as i32);
    (r, g, b)
}

pub fn rgb_to_ycbcr(img: &RgbImage) -> YcbcrImage {
    let (w, h) = img.dims();
    let [r, g, b] = img.planes();
    let n = w * h;
    let (mut y, mut cb, mut cr) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for i in 0..n {
        let (yy, bb, rr) = pixel_to_ycbcr(r.samples()[i], g.samples()[i], b.samples()[i]);
        y.push(yy);
        cb.push(bb);
        cr.push(rr);
    }
    YcbcrImage {
        y: ImagePlane::new(w, h, y).expect("shape preserved"),
        cb: ImagePlane::new(w, h, cb).expect("shape preserved"),
        cr: ImagePlane::new(w, h, cr).expect("shape preserved"),
    }
}

pub fn ycbcr_to_rgb(img: &YcbcrImage) -> RgbImage {
    let (w, h) = img.dims();
    let n = w * h;
    let (mut r, mut g, mut b) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for i in 0..n {
        let (rr, gg, bb) =
            pixel_to_rgb(img.y.samples()[i], img.cb.samples()[i], img.cr.samples()[i]);
        r.push(rr);
        g.push(gg);
        b.push(bb);
    }
    merge_channels(
        ImagePlane::new(w, h, r).expect("shape preserved"),
        ImagePlane::new(w, h, g).expect("shape preserved"),
        ImagePlane::new(w, h, b).expect("shape preserved"),
    )
    .expect("inverse conversion clamps to pixel range")
}
