//! Procedural test images.
//!
//! Stand-ins for the classic baboon and peppers covers and for two grey
//! secrets, an earth-like globe and a football. They are generated from fixed
//! seeds, so every run and every platform sees the same pixels, and they carry
//! no third-party licence. They only mimic the broad statistics of the
//! originals: fur-like high-frequency texture for baboon, large smooth
//! saturated regions for peppers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::image::{merge_channels, ImagePlane, RgbImage};

/// Smooth lattice noise in roughly [0, 1].
struct ValueNoise {
    cells: usize,
    lattice: Vec<f64>,
}

impl ValueNoise {
    fn new(rng: &mut ChaCha8Rng, cells: usize) -> Self {
        let side = cells + 2;
        Self {
            cells,
            lattice: (0..side * side).map(|_| rng.random::<f64>()).collect(),
        }
    }

    /// `u`, `v` in [0, 1].
    fn sample(&self, u: f64, v: f64) -> f64 {
        let side = self.cells + 2;
        let fx = u.clamp(0.0, 1.0) * self.cells as f64;
        let fy = v.clamp(0.0, 1.0) * self.cells as f64;
        let (ix, iy) = (fx.floor() as usize, fy.floor() as usize);
        let (tx, ty) = (smooth(fx - ix as f64), smooth(fy - iy as f64));
        let at = |x: usize, y: usize| self.lattice[y * side + x];
        let top = lerp(at(ix, iy), at(ix + 1, iy), tx);
        let bottom = lerp(at(ix, iy + 1), at(ix + 1, iy + 1), tx);
        lerp(top, bottom, ty)
    }
}

fn smooth(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

fn fractal(octaves: &[ValueNoise], u: f64, v: f64) -> f64 {
    let mut sum = 0.0;
    let mut norm = 0.0;
    let mut amp = 1.0;
    for n in octaves {
        sum += amp * n.sample(u, v);
        norm += amp;
        amp *= 0.55;
    }
    sum / norm
}

/// Soft shoulder near both ends of the range, like film response, so
/// highlights and shadows roll off instead of clipping flat.
fn knee(v: f64) -> f64 {
    const HI: f64 = 215.0;
    const LO: f64 = 12.0;
    if v > HI {
        HI + 36.0 * (1.0 - (-(v - HI) / 36.0).exp())
    } else if v < LO {
        LO * (v / LO).max(0.0).powf(0.5).max(0.25)
    } else {
        v
    }
}

fn to_pixel(v: f64) -> i32 {
    v.round().clamp(0.0, 255.0) as i32
}

fn rgb_from_fn(size: usize, f: impl Fn(f64, f64) -> (f64, f64, f64)) -> RgbImage {
    let mut r = ImagePlane::zeros(size, size);
    let mut g = ImagePlane::zeros(size, size);
    let mut b = ImagePlane::zeros(size, size);
    for y in 0..size {
        for x in 0..size {
            let u = (x as f64 + 0.5) / size as f64;
            let v = (y as f64 + 0.5) / size as f64;
            let (rr, gg, bb) = f(u, v);
            r.set(x, y, to_pixel(knee(rr)));
            g.set(x, y, to_pixel(knee(gg)));
            b.set(x, y, to_pixel(knee(bb)));
        }
    }
    merge_channels(r, g, b).expect("generated planes are in range")
}

/// Colourful face with dense fur texture.
pub fn baboon(size: usize) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBAB0_0001);
    let fur: Vec<ValueNoise> = [24, 48, 96, 160]
        .iter()
        .map(|&c| ValueNoise::new(&mut rng, c))
        .collect();
    let hue: Vec<ValueNoise> = [3, 6]
        .iter()
        .map(|&c| ValueNoise::new(&mut rng, c))
        .collect();
    let grain = ValueNoise::new(&mut rng, 200);

    rgb_from_fn(size, |u, v| {
        // fur: streaks stretched vertically, strong fine detail
        let strand = fractal(&fur, u, v * 0.35 + u * 0.1);
        let fine = grain.sample(u, v) - 0.5;
        let texture = (strand - 0.5) * 2.2 + fine * 0.9;
        let tone = fractal(&hue, u, v);

        // fur base: olive / tan, varying with low-frequency hue noise
        let mut r = 145.0 + 70.0 * (tone - 0.5) + 135.0 * texture;
        let mut g = 130.0 + 50.0 * (tone - 0.5) + 130.0 * texture;
        let mut b = 100.0 - 40.0 * (tone - 0.5) + 110.0 * texture;

        // red nose down the middle, blue ridged cheeks either side
        let dx = u - 0.5;
        let nose = (-(dx * dx) / 0.004 - ((v - 0.62) * (v - 0.62)) / 0.06).exp();
        let cheek_l = (-((u - 0.33).powi(2)) / 0.006 - ((v - 0.58).powi(2)) / 0.03).exp();
        let cheek_r = (-((u - 0.67).powi(2)) / 0.006 - ((v - 0.58).powi(2)) / 0.03).exp();
        let cheek = (cheek_l + cheek_r).min(1.0);
        let ridges = 0.5 + 0.5 * (v * 90.0 + (u - 0.5).abs() * 20.0).sin();

        r = lerp(r, 215.0 + 25.0 * texture, nose);
        g = lerp(g, 60.0 + 20.0 * texture, nose);
        b = lerp(b, 55.0 + 20.0 * texture, nose);

        r = lerp(r, 95.0 + 40.0 * ridges, cheek);
        g = lerp(g, 120.0 + 40.0 * ridges, cheek);
        b = lerp(b, 185.0 + 45.0 * ridges, cheek);

        // eyes
        for ex in [0.36, 0.64] {
            let e = (-((u - ex).powi(2) + (v - 0.3).powi(2)) / 0.0015).exp();
            r = lerp(r, 230.0, e * 0.9);
            g = lerp(g, 150.0, e * 0.9);
            b = lerp(b, 20.0, e * 0.9);
        }
        (r, g, b)
    })
}

type Rgb = (f64, f64, f64);

/// Large smooth red, green and yellow shapes with soft shading and
/// highlights.
pub fn peppers(size: usize) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9E99_E125);
    let shade = ValueNoise::new(&mut rng, 5);
    // (centre x, centre y, radius x, radius y, colour)
    let mut shapes: Vec<(f64, f64, f64, f64, Rgb)> = Vec::new();
    let palette = [
        (235.0, 45.0, 45.0),
        (110.0, 200.0, 70.0),
        (210.0, 35.0, 40.0),
        (140.0, 215.0, 90.0),
        (245.0, 215.0, 80.0),
        (225.0, 205.0, 170.0),
    ];
    for i in 0..22 {
        shapes.push((
            rng.random_range(0.0..1.0),
            rng.random_range(0.0..1.0),
            rng.random_range(0.15..0.35),
            rng.random_range(0.12..0.3),
            palette[i % palette.len()],
        ));
    }

    rgb_from_fn(size, |u, v| {
        // dark background between fruit
        let mut colour = (45.0, 35.0, 30.0);
        for &(cx, cy, rx, ry, c) in &shapes {
            let d = ((u - cx) / rx).powi(2) + ((v - cy) / ry).powi(2);
            if d < 1.0 {
                // bright on the upper left, dark toward the rim
                let light = 1.0 - 0.5 * d - 0.2 * ((u - cx) / rx + (v - cy) / ry).max(-1.0);
                let highlight = (-(((u - cx + rx * 0.35) / rx).powi(2)
                    + ((v - cy + ry * 0.35) / ry).powi(2))
                    / 0.02)
                    .exp();
                colour = (
                    c.0 * light + 160.0 * highlight,
                    c.1 * light + 160.0 * highlight,
                    c.2 * light + 150.0 * highlight,
                );
            }
        }
        let s = 0.85 + 0.3 * shade.sample(u, v);
        (colour.0 * s, colour.1 * s, colour.2 * s)
    })
}

/// A globe: shaded disk with continent noise on a dark, faintly noisy sky.
pub fn earth(size: usize) -> ImagePlane {
    let mut rng = ChaCha8Rng::seed_from_u64(0xEA27_0001);
    let land: Vec<ValueNoise> = [4, 8, 16, 32]
        .iter()
        .map(|&c| ValueNoise::new(&mut rng, c))
        .collect();
    let cloud: Vec<ValueNoise> = [6, 12, 24]
        .iter()
        .map(|&c| ValueNoise::new(&mut rng, c))
        .collect();
    let sky = ValueNoise::new(&mut rng, 64);

    ImagePlane::from_fn(size, size, |x, y| {
        let u = (x as f64 + 0.5) / size as f64;
        let v = (y as f64 + 0.5) / size as f64;
        let (dx, dy) = ((u - 0.5) / 0.44, (v - 0.5) / 0.44);
        let r2 = dx * dx + dy * dy;
        if r2 >= 1.0 {
            return to_pixel(4.0 + 8.0 * sky.sample(u, v));
        }
        let limb = (1.0 - r2).sqrt();
        let continent = fractal(&land, u, v);
        let clouds = fractal(&cloud, u * 1.3, v);
        let mut level = if continent > 0.52 {
            150.0 + 120.0 * (continent - 0.52)
        } else {
            70.0 + 40.0 * continent
        };
        if clouds > 0.58 {
            level = lerp(level, 235.0, ((clouds - 0.58) * 4.0).min(1.0));
        }
        to_pixel(level * (0.35 + 0.65 * limb))
    })
}

/// A football with dark patches on a mid-grey grass background.
pub fn football(size: usize) -> ImagePlane {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF00F_BA11);
    let grass = ValueNoise::new(&mut rng, 40);
    let patches: Vec<(f64, f64)> = (0..6)
        .map(|k| {
            let a = k as f64 * std::f64::consts::TAU / 5.0;
            if k == 5 {
                (0.0, 0.0)
            } else {
                (0.62 * a.cos(), 0.62 * a.sin())
            }
        })
        .collect();

    ImagePlane::from_fn(size, size, |x, y| {
        let u = (x as f64 + 0.5) / size as f64;
        let v = (y as f64 + 0.5) / size as f64;
        let (dx, dy) = ((u - 0.5) / 0.38, (v - 0.48) / 0.38);
        let r2 = dx * dx + dy * dy;
        if r2 >= 1.0 {
            let stripe = if ((v * 6.0).floor() as i64) % 2 == 0 {
                10.0
            } else {
                -10.0
            };
            return to_pixel(105.0 + stripe + 50.0 * (grass.sample(u, v) - 0.5));
        }
        let shading = 0.55 + 0.45 * (1.0 - r2).sqrt() - 0.15 * (dx + dy);
        let near = patches
            .iter()
            .map(|&(px, py)| ((dx - px).powi(2) + (dy - py).powi(2)).sqrt())
            .fold(f64::MAX, f64::min);
        let base = if near < 0.26 { 35.0 } else { 230.0 };
        // seam lines between panels
        let seam = if (near - 0.26).abs() < 0.02 { 0.6 } else { 1.0 };
        to_pixel(base * shading * seam)
    })
}

/// The four standard test images at their usual sizes: 256x256 covers and
/// 128x128 secrets.
pub struct StandardSet {
    pub covers: Vec<(&'static str, RgbImage)>,
    pub secrets: Vec<(&'static str, ImagePlane)>,
}

pub fn standard_set() -> StandardSet {
    StandardSet {
        covers: vec![("baboon", baboon(256)), ("peppers", peppers(256))],
        secrets: vec![("earth", earth(128)), ("football", football(128))],
    }
}
