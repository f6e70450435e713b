//! Pulls an embedded sub-band set back inside the 8-bit pixel range without
//! touching LL or any payload bit.
//!
//! If `inverse(sb)` has no sample outside [0, 255], clamping is a no-op and
//! `forward(inverse(sb)) == sb` exactly. So it is enough to nudge detail
//! coefficients near each out-of-range pixel until none remain. Payload
//! coefficients may move to any value with the same bit 3; the rest are free.

use crate::bitplane::read_bit;
use crate::error::{Error, Result};
use crate::image::ImagePlane;
use crate::iwt::{self, SubBands};

/// Coefficient radius of the neighbourhood searched around a bad pixel.
const REACH: usize = 1;
/// Coefficient radius over which a candidate move is scored.
const SCORE_RADIUS: usize = 4;
/// Extra coefficients on every side of the scoring window, so the cropped
/// inverse is exact inside it.
const MARGIN: usize = 2;
const MAX_STEP: i32 = 24;

#[derive(Debug, Clone, Copy)]
enum Band {
    Lh,
    Hl,
    Hh,
}

const BANDS: [Band; 3] = [Band::Lh, Band::Hl, Band::Hh];

fn band(sb: &SubBands, b: Band) -> &ImagePlane {
    match b {
        Band::Lh => &sb.lh,
        Band::Hl => &sb.hl,
        Band::Hh => &sb.hh,
    }
}

fn band_mut(sb: &mut SubBands, b: Band) -> &mut ImagePlane {
    match b {
        Band::Lh => &mut sb.lh,
        Band::Hl => &mut sb.hl,
        Band::Hh => &mut sb.hh,
    }
}

/// Position of a coefficient in the LH, HL, HH raster traversal.
fn traversal_index(sb: &SubBands, b: Band, x: usize, y: usize) -> usize {
    let (w, h) = sb.band_dims();
    let offset = match b {
        Band::Lh => 0,
        Band::Hl => w * h,
        Band::Hh => 2 * w * h,
    };
    offset + y * w + x
}

fn excess(v: i32) -> i64 {
    i64::from((-v).max(0) + (v - 255).max(0))
}

/// Coefficient window `[x0, x1) x [y0, y1)` in band coordinates.
#[derive(Debug, Clone, Copy)]
struct Window {
    x0: usize,
    x1: usize,
    y0: usize,
    y1: usize,
}

impl Window {
    fn around(cx: usize, cy: usize, radius: usize, (w, h): (usize, usize)) -> Self {
        Self {
            x0: cx.saturating_sub(radius),
            x1: (cx + radius + 1).min(w),
            y0: cy.saturating_sub(radius),
            y1: (cy + radius + 1).min(h),
        }
    }

    fn crop(&self, p: &ImagePlane) -> ImagePlane {
        ImagePlane::from_fn(self.x1 - self.x0, self.y1 - self.y0, |x, y| {
            p.get(self.x0 + x, self.y0 + y)
        })
    }
}

/// Pixels of the cropped inverse covering `eval`, as (x, y, value) in full
/// image coordinates.
fn local_pixels(sb: &SubBands, crop: Window, eval: Window) -> Result<Vec<(usize, usize, i32)>> {
    let local = SubBands::new(
        crop.crop(&sb.ll),
        crop.crop(&sb.lh),
        crop.crop(&sb.hl),
        crop.crop(&sb.hh),
    )?;
    let px = iwt::inverse(&local)?;
    let mut out = Vec::with_capacity(4 * (eval.x1 - eval.x0) * (eval.y1 - eval.y0));
    for y in 2 * eval.y0..2 * eval.y1 {
        for x in 2 * eval.x0..2 * eval.x1 {
            out.push((x, y, px.get(x - 2 * crop.x0, y - 2 * crop.y0)));
        }
    }
    Ok(out)
}

fn local_excess(sb: &SubBands, crop: Window, eval: Window) -> Result<i64> {
    Ok(local_pixels(sb, crop, eval)?
        .iter()
        .map(|&(_, _, v)| excess(v))
        .sum())
}

/// Best single-coefficient change near pixel `(px, py)`; returns whether the
/// out-of-range total in the neighbourhood went down.
fn improve_at(
    sb: &mut SubBands,
    pixels: &mut ImagePlane,
    payload_bits: usize,
    px: usize,
    py: usize,
) -> Result<bool> {
    let dims = sb.band_dims();
    let (cx, cy) = (px / 2, py / 2);
    let eval = Window::around(cx, cy, SCORE_RADIUS, dims);
    let crop = Window::around(cx, cy, SCORE_RADIUS + MARGIN, dims);
    let baseline = local_excess(sb, crop, eval)?;
    if baseline == 0 {
        return Ok(false);
    }

    let mut best: Option<(i64, i32, Band, usize, usize, i32)> = None;
    let near = Window::around(cx, cy, REACH, dims);
    for b in BANDS {
        for y in near.y0..near.y1 {
            for x in near.x0..near.x1 {
                let original = band(sb, b).get(x, y);
                let locked = traversal_index(sb, b, x, y) < payload_bits;
                for step in -MAX_STEP..=MAX_STEP {
                    let v = original + step;
                    if step == 0 || (locked && read_bit(v) != read_bit(original)) {
                        continue;
                    }
                    band_mut(sb, b).set(x, y, v);
                    let score = local_excess(sb, crop, eval)?;
                    band_mut(sb, b).set(x, y, original);
                    let candidate = (score, step.abs(), b, x, y, v);
                    if score < baseline
                        && best.is_none_or(|c| (candidate.0, candidate.1) < (c.0, c.1))
                    {
                        best = Some(candidate);
                    }
                }
            }
        }
    }

    let Some((_, _, b, x, y, v)) = best else {
        return Ok(false);
    };
    band_mut(sb, b).set(x, y, v);
    for (x, y, value) in local_pixels(sb, crop, eval)? {
        pixels.set(x, y, value);
    }
    Ok(true)
}

/// Adjusts the detail bands of `target` so its inverse transform lies in
/// [0, 255], preserving LL and bit 3 of the first `payload_bits`
/// coefficients. Returns the pixels and the number of sweeps used.
pub fn fit_to_pixel_range(
    target: &SubBands,
    payload_bits: usize,
    max_sweeps: usize,
) -> Result<(ImagePlane, usize)> {
    let mut sb = target.clone();
    let mut pixels = iwt::inverse(&sb)?;
    let mut previous = i64::MAX;
    for sweep in 0..=max_sweeps {
        let bad: Vec<(usize, usize)> = (0..pixels.height())
            .flat_map(|y| (0..pixels.width()).map(move |x| (x, y)))
            .filter(|&(x, y)| excess(pixels.get(x, y)) > 0)
            .collect();
        if bad.is_empty() {
            // the incremental updates are only a guide; confirm on the full plane
            let exact = iwt::inverse(&sb)?;
            if exact.is_pixel_range() {
                return Ok((exact, sweep));
            }
            pixels = exact;
            continue;
        }
        let total: i64 = bad.iter().map(|&(x, y)| excess(pixels.get(x, y))).sum();
        if sweep == max_sweeps || total >= previous {
            break;
        }
        previous = total;
        for (x, y) in bad {
            while excess(pixels.get(x, y)) > 0
                && improve_at(&mut sb, &mut pixels, payload_bits, x, y)?
            {}
        }
        pixels = iwt::inverse(&sb)?;
    }
    Err(Error::RoundTripUnstable {
        iterations: max_sweeps,
    })
}
