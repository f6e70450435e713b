//! Mean squared error and peak signal-to-noise ratio.

use crate::error::{Error, Result};
use crate::image::{ImagePlane, RgbImage};

pub const PEAK_8BIT: f64 = 255.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityScore {
    pub mse: f64,
    /// `f64::INFINITY` when `mse == 0`.
    pub psnr_db: f64,
    pub peak: f64,
}

impl QualityScore {
    pub fn from_mse(mse: f64, peak: f64) -> Self {
        Self {
            mse,
            psnr_db: psnr_from_mse(mse, peak),
            peak,
        }
    }
}

pub fn psnr_from_mse(mse: f64, peak: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (peak * peak / mse).log10()
    }
}

fn sum_squared(a: &ImagePlane, b: &ImagePlane) -> Result<u128> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare {:?} with {:?}",
            a.dims(),
            b.dims()
        )));
    }
    Ok(a.samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| {
            let d = (i64::from(x) - i64::from(y)).unsigned_abs();
            u128::from(d * d)
        })
        .sum())
}

pub fn mse(a: &ImagePlane, b: &ImagePlane) -> Result<f64> {
    Ok(sum_squared(a, b)? as f64 / a.len() as f64)
}

pub fn psnr(a: &ImagePlane, b: &ImagePlane, peak: f64) -> Result<f64> {
    Ok(psnr_from_mse(mse(a, b)?, peak))
}

pub fn plane_quality(a: &ImagePlane, b: &ImagePlane) -> Result<QualityScore> {
    Ok(QualityScore::from_mse(mse(a, b)?, PEAK_8BIT))
}

/// MSE pooled over all three channels.
pub fn rgb_mse(a: &RgbImage, b: &RgbImage) -> Result<f64> {
    let mut total = 0u128;
    for (pa, pb) in a.planes().into_iter().zip(b.planes()) {
        total += sum_squared(pa, pb)?;
    }
    Ok(total as f64 / (3 * a.width() * a.height()) as f64)
}

pub fn rgb_psnr(a: &RgbImage, b: &RgbImage) -> Result<f64> {
    Ok(psnr_from_mse(rgb_mse(a, b)?, PEAK_8BIT))
}

pub fn rgb_quality(a: &RgbImage, b: &RgbImage) -> Result<QualityScore> {
    Ok(QualityScore::from_mse(rgb_mse(a, b)?, PEAK_8BIT))
}
