//! Single-level 2D integer wavelet transform: reversible LeGall 5/3
//! (CDF 2.2) lifting with floor rounding.
//!
//! 1D step on an even-length signal `x` of length `2n`:
//!
//! ```text
//! s0[i] = x[2i]            d0[i] = x[2i+1]
//! d[i]  = d0[i] - floor((s0[i] + s0[i+1]) / 2)
//! s[i]  = s0[i] + floor((d[i-1] + d[i] + 2) / 4)
//! ```
//!
//! Edges use whole-sample symmetric extension, which reduces to
//! `s0[n] = s0[n-1]` and `d[-1] = d[0]`. The 2D transform runs rows first,
//! then columns; the inverse undoes columns, then rows. Quadrant naming:
//! `lh` is low-pass along rows and high-pass along columns, `hl` the reverse.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::ImagePlane;

/// The four quadrants of a single-level decomposition, each half the source
/// plane's width and height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubBands {
    pub ll: ImagePlane,
    pub lh: ImagePlane,
    pub hl: ImagePlane,
    pub hh: ImagePlane,
}

impl SubBands {
    pub fn new(ll: ImagePlane, lh: ImagePlane, hl: ImagePlane, hh: ImagePlane) -> Result<Self> {
        let d = ll.dims();
        if lh.dims() != d || hl.dims() != d || hh.dims() != d {
            return Err(Error::DimensionMismatch(format!(
                "sub-bands are {:?}, {:?}, {:?} and {:?}",
                d,
                lh.dims(),
                hl.dims(),
                hh.dims()
            )));
        }
        Ok(Self { ll, lh, hl, hh })
    }

    /// `ll` with all-zero high bands.
    pub fn approximation_only(ll: ImagePlane) -> Self {
        let (w, h) = ll.dims();
        Self {
            lh: ImagePlane::zeros(w, h),
            hl: ImagePlane::zeros(w, h),
            hh: ImagePlane::zeros(w, h),
            ll,
        }
    }

    /// Dimensions of each quadrant.
    pub fn band_dims(&self) -> (usize, usize) {
        self.ll.dims()
    }

    pub fn high_bands(&self) -> [&ImagePlane; 3] {
        [&self.lh, &self.hl, &self.hh]
    }
}

/// Forward 1D lifting. Writes the `n` low-pass samples to `low` and the `n`
/// high-pass samples to `high`, where `x.len() == 2n`.
pub fn lift_forward(x: &[i32], low: &mut [i32], high: &mut [i32]) {
    let n = x.len() / 2;
    debug_assert!(x.len() == 2 * n && n >= 1);
    debug_assert!(low.len() == n && high.len() == n);

    for i in 0..n {
        let left = x[2 * i];
        let right = if i + 1 < n { x[2 * i + 2] } else { left };
        high[i] = x[2 * i + 1] - ((left + right) >> 1);
    }
    for i in 0..n {
        let prev = if i > 0 { high[i - 1] } else { high[0] };
        low[i] = x[2 * i] + ((prev + high[i] + 2) >> 2);
    }
}

/// Inverse of [`lift_forward`].
pub fn lift_inverse(low: &[i32], high: &[i32], x: &mut [i32]) {
    let n = low.len();
    debug_assert!(high.len() == n && x.len() == 2 * n && n >= 1);

    for i in 0..n {
        let prev = if i > 0 { high[i - 1] } else { high[0] };
        x[2 * i] = low[i] - ((prev + high[i] + 2) >> 2);
    }
    for i in 0..n {
        let left = x[2 * i];
        let right = if i + 1 < n { x[2 * i + 2] } else { left };
        x[2 * i + 1] = high[i] + ((left + right) >> 1);
    }
}

/// Transforms every column of a `width x height` row-major buffer, returning
/// the low-pass and high-pass halves as `width x height/2` buffers.
fn columns_forward(data: &[i32], width: usize, height: usize) -> (Vec<i32>, Vec<i32>) {
    let half = height / 2;
    let transformed: Vec<(Vec<i32>, Vec<i32>)> = (0..width)
        .into_par_iter()
        .map(|c| {
            let col: Vec<i32> = (0..height).map(|r| data[r * width + c]).collect();
            let mut lo = vec![0; half];
            let mut hi = vec![0; half];
            lift_forward(&col, &mut lo, &mut hi);
            (lo, hi)
        })
        .collect();
    let mut low = vec![0; width * half];
    let mut high = vec![0; width * half];
    for (c, (lo, hi)) in transformed.iter().enumerate() {
        for r in 0..half {
            low[r * width + c] = lo[r];
            high[r * width + c] = hi[r];
        }
    }
    (low, high)
}

fn columns_inverse(low: &[i32], high: &[i32], width: usize, half: usize) -> Vec<i32> {
    let height = half * 2;
    let cols: Vec<Vec<i32>> = (0..width)
        .into_par_iter()
        .map(|c| {
            let lo: Vec<i32> = (0..half).map(|r| low[r * width + c]).collect();
            let hi: Vec<i32> = (0..half).map(|r| high[r * width + c]).collect();
            let mut col = vec![0; height];
            lift_inverse(&lo, &hi, &mut col);
            col
        })
        .collect();
    let mut out = vec![0; width * height];
    for (c, col) in cols.iter().enumerate() {
        for r in 0..height {
            out[r * width + c] = col[r];
        }
    }
    out
}

pub fn forward(p: &ImagePlane) -> Result<SubBands> {
    p.require_even()?;
    let (w, h) = p.dims();
    let (hw, hh) = (w / 2, h / 2);

    // Rows: split each row into a low half and a high half.
    let mut row_low = vec![0; hw * h];
    let mut row_high = vec![0; hw * h];
    row_low
        .par_chunks_mut(hw)
        .zip(row_high.par_chunks_mut(hw))
        .enumerate()
        .for_each(|(y, (lo, hi))| lift_forward(p.row(y), lo, hi));

    let (ll, lh) = columns_forward(&row_low, hw, h);
    let (hl, hh_band) = columns_forward(&row_high, hw, h);

    let plane = |v| ImagePlane::new(hw, hh, v).expect("quadrant shape");
    Ok(SubBands {
        ll: plane(ll),
        lh: plane(lh),
        hl: plane(hl),
        hh: plane(hh_band),
    })
}

pub fn inverse(sb: &SubBands) -> Result<ImagePlane> {
    let (hw, hh) = sb.ll.dims();
    for q in sb.high_bands() {
        if q.dims() != (hw, hh) {
            return Err(Error::DimensionMismatch(format!(
                "quadrant {:?} does not match LL {:?}",
                q.dims(),
                (hw, hh)
            )));
        }
    }
    let row_low = columns_inverse(sb.ll.samples(), sb.lh.samples(), hw, hh);
    let row_high = columns_inverse(sb.hl.samples(), sb.hh.samples(), hw, hh);

    let (w, h) = (hw * 2, hh * 2);
    let mut out = vec![0; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, row)| {
        lift_inverse(
            &row_low[y * hw..(y + 1) * hw],
            &row_high[y * hw..(y + 1) * hw],
            row,
        );
    });
    Ok(ImagePlane::new(w, h, out).expect("reconstructed shape"))
}
