//! Lossless image files in and out.
//!
//! Colour images are written as PNG, BMP or PPM and grey images as PNG, BMP
//! or PGM, chosen by file extension. Any other extension is refused before
//! anything is written.

use std::path::Path;

use anyhow::{Context, Result};
use image::{DynamicImage, ImageFormat};
use stego_core::colorspace::pixel_to_ycbcr;
use stego_core::{ImagePlane, RgbImage};

use crate::failure::Invalid;

const LOSSLESS: [(&str, ImageFormat); 4] = [
    ("png", ImageFormat::Png),
    ("bmp", ImageFormat::Bmp),
    ("ppm", ImageFormat::Pnm),
    ("pgm", ImageFormat::Pnm),
];

fn output_format(path: &Path, grey: bool) -> Result<ImageFormat> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    let allowed = if grey {
        ["png", "bmp", "pgm"]
    } else {
        ["png", "bmp", "ppm"]
    };
    if !allowed.contains(&ext.as_str()) {
        return Err(Invalid(format!(
            "refusing to write {}: output must be lossless ({})",
            path.display(),
            allowed.join(", ")
        ))
        .into());
    }
    Ok(LOSSLESS
        .iter()
        .find(|(e, _)| *e == ext)
        .map(|&(_, f)| f)
        .expect("listed above"))
}

pub fn check_rgb_output(path: &Path) -> Result<()> {
    output_format(path, false).map(drop)
}

pub fn check_grey_output(path: &Path) -> Result<()> {
    output_format(path, true).map(drop)
}

fn open(path: &Path) -> Result<DynamicImage> {
    image::ImageReader::open(path)
        .with_context(|| format!("cannot open {}", path.display()))?
        .with_guessed_format()
        .with_context(|| format!("cannot read {}", path.display()))?
        .decode()
        .with_context(|| format!("cannot decode {}", path.display()))
}

pub fn read_rgb(path: &Path) -> Result<RgbImage> {
    let img = open(path)?.to_rgb8();
    let (w, h) = img.dimensions();
    Ok(RgbImage::from_interleaved(
        w as usize,
        h as usize,
        img.as_raw(),
    )?)
}

/// Reads a grey image. A colour file is reduced to its luma plane with the
/// same integer weights the YCbCr conversion uses.
pub fn read_grey(path: &Path) -> Result<ImagePlane> {
    let img = open(path)?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    if !img.color().has_color() {
        return Ok(ImagePlane::from_u8(w, h, img.to_luma8().as_raw())?);
    }
    let rgb = img.to_rgb8();
    Ok(ImagePlane::from_fn(w, h, |x, y| {
        let [r, g, b] = rgb.get_pixel(x as u32, y as u32).0;
        pixel_to_ycbcr(i32::from(r), i32::from(g), i32::from(b)).0
    }))
}

/// An image file holding either a colour or a grey picture.
pub enum Picture {
    Rgb(RgbImage),
    Grey(ImagePlane),
}

pub fn read_any(path: &Path) -> Result<Picture> {
    let img = open(path)?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    if img.color().has_color() {
        let rgb = img.to_rgb8();
        Ok(Picture::Rgb(RgbImage::from_interleaved(
            w,
            h,
            rgb.as_raw(),
        )?))
    } else {
        Ok(Picture::Grey(ImagePlane::from_u8(
            w,
            h,
            img.to_luma8().as_raw(),
        )?))
    }
}

pub fn write_rgb(path: &Path, img: &RgbImage) -> Result<()> {
    let format = output_format(path, false)?;
    let (w, h) = img.dims();
    let buf = image::RgbImage::from_raw(w as u32, h as u32, img.to_interleaved())
        .expect("buffer matches dimensions");
    buf.save_with_format(path, format)
        .with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_grey(path: &Path, plane: &ImagePlane) -> Result<()> {
    let format = output_format(path, true)?;
    let (w, h) = plane.dims();
    let buf = image::GrayImage::from_raw(w as u32, h as u32, plane.to_u8()?)
        .expect("buffer matches dimensions");
    buf.save_with_format(path, format)
        .with_context(|| format!("cannot write {}", path.display()))
}
