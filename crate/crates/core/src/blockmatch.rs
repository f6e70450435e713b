//! 2x2 block matching between a secret LL band and a cover LL band.
//!
//! The match key stores, for every secret block, the index of the cover block
//! with the least squared error. Squared error has the same argmin as RMSE and
//! keeps the comparison exact; ties go to the smallest cover index.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::{clamp_to_pixel, ImagePlane};
use crate::iwt::{self, SubBands};

pub const BLOCK: usize = 2;

/// A plane viewed as non-overlapping 2x2 tiles, indexed row-major.
#[derive(Debug, Clone)]
pub struct BlockGrid<'a> {
    source: &'a ImagePlane,
    blocks_x: usize,
    blocks_y: usize,
}

impl<'a> BlockGrid<'a> {
    pub fn blocks_x(&self) -> usize {
        self.blocks_x
    }

    pub fn blocks_y(&self) -> usize {
        self.blocks_y
    }

    pub fn len(&self) -> usize {
        self.blocks_x * self.blocks_y
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Samples of block `k` in raster order: top-left, top-right,
    /// bottom-left, bottom-right.
    #[inline]
    pub fn block(&self, k: usize) -> [i32; 4] {
        let x = BLOCK * (k % self.blocks_x);
        let y = BLOCK * (k / self.blocks_x);
        let s = self.source;
        [
            s.get(x, y),
            s.get(x + 1, y),
            s.get(x, y + 1),
            s.get(x + 1, y + 1),
        ]
    }

    pub fn blocks(&self) -> impl Iterator<Item = [i32; 4]> + '_ {
        (0..self.len()).map(|k| self.block(k))
    }
}

pub fn partition(p: &ImagePlane) -> Result<BlockGrid<'_>> {
    p.require_even()?;
    Ok(BlockGrid {
        source: p,
        blocks_x: p.width() / BLOCK,
        blocks_y: p.height() / BLOCK,
    })
}

/// Per secret block, the index of its best-matching cover block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchKey {
    entries: Vec<u32>,
    nc: usize,
    blocks_x: usize,
    blocks_y: usize,
}

impl MatchKey {
    pub fn new(entries: Vec<u32>, nc: usize, blocks_x: usize, blocks_y: usize) -> Result<Self> {
        if nc == 0 {
            return Err(Error::EmptyCover);
        }
        if entries.len() != blocks_x * blocks_y {
            return Err(Error::DimensionMismatch(format!(
                "{} key entries for a {blocks_x}x{blocks_y} block grid",
                entries.len()
            )));
        }
        if let Some((position, &entry)) =
            entries.iter().enumerate().find(|(_, &e)| e as usize >= nc)
        {
            return Err(Error::IndexOutOfRange {
                position,
                entry,
                nc,
            });
        }
        Ok(Self {
            entries,
            nc,
            blocks_x,
            blocks_y,
        })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Cover block count the key was built against.
    pub fn nc(&self) -> usize {
        self.nc
    }

    pub fn secret_blocks_x(&self) -> usize {
        self.blocks_x
    }

    pub fn secret_blocks_y(&self) -> usize {
        self.blocks_y
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[inline]
pub fn block_sse(a: &[i32; 4], b: &[i32; 4]) -> i64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            d * d
        })
        .sum()
}

pub fn build_key(cover_ll: &ImagePlane, secret_ll: &ImagePlane) -> Result<MatchKey> {
    let cover = partition(cover_ll)?;
    let secret = partition(secret_ll)?;
    if cover.is_empty() {
        return Err(Error::EmptyCover);
    }
    let codebook: Vec<[i32; 4]> = cover.blocks().collect();

    let entries = (0..secret.len())
        .into_par_iter()
        .map(|i| {
            let target = secret.block(i);
            let mut best = 0usize;
            let mut best_sse = i64::MAX;
            for (k, candidate) in codebook.iter().enumerate() {
                let sse = block_sse(&target, candidate);
                // strict comparison keeps the smallest index on ties
                if sse < best_sse {
                    best_sse = sse;
                    best = k;
                    if sse == 0 {
                        break;
                    }
                }
            }
            best as u32
        })
        .collect();

    MatchKey::new(entries, cover.len(), secret.blocks_x(), secret.blocks_y())
}

/// Assemble the approximate secret LL by copying the cover blocks the key
/// points at.
pub fn reconstruct_ll(cover_ll: &ImagePlane, key: &MatchKey) -> Result<ImagePlane> {
    let cover = partition(cover_ll)?;
    if cover.len() != key.nc() {
        return Err(Error::KeyCoverMismatch {
            key_nc: key.nc(),
            cover_nc: cover.len(),
        });
    }
    let bx = key.secret_blocks_x();
    let mut out = ImagePlane::zeros(bx * BLOCK, key.secret_blocks_y() * BLOCK);
    for (i, &entry) in key.entries().iter().enumerate() {
        let [a, b, c, d] = cover.block(entry as usize);
        let x = BLOCK * (i % bx);
        let y = BLOCK * (i / bx);
        out.set(x, y, a);
        out.set(x + 1, y, b);
        out.set(x, y + 1, c);
        out.set(x + 1, y + 1, d);
    }
    Ok(out)
}

/// Inverse transform of `approx_ll` with zeroed high bands, clamped to pixels.
pub fn rebuild_secret(approx_ll: &ImagePlane) -> Result<ImagePlane> {
    let plane = iwt::inverse(&SubBands::approximation_only(approx_ll.clone()))?;
    Ok(clamp_to_pixel(&plane))
}
