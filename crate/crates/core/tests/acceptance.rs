//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stego_core::bitplane::{self, EmbedMode, Payload};
use stego_core::colorspace::{pixel_to_rgb, pixel_to_ycbcr, rgb_to_ycbcr};
use stego_core::{
    blockmatch, corpus, iwt, keycodec, metrics, pipeline, Channel, ChannelPair, Domain,
    EmbedRequest, ImagePlane, MatchKey, RgbImage,
};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

const STEGO_FLOOR_RGB: f64 = 40.0;
const STEGO_FLOOR_YCBCR: f64 = 33.0;
const SECRET_FLOOR: f64 = 22.0;
const RUN_BUDGET: Duration = Duration::from_secs(10);
const GOLDEN_PASSPHRASE: &str = "golden interchange";

fn random_plane(rng: &mut ChaCha8Rng, w: usize, h: usize) -> ImagePlane {
    ImagePlane::from_fn(w, h, |_, _| rng.random_range(0..=255))
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stego-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn save_png(img: &RgbImage, path: &Path) {
    let (w, h) = img.dims();
    image::RgbImage::from_raw(w as u32, h as u32, img.to_interleaved())
        .expect("buffer size")
        .save(path)
        .expect("write png");
}

fn load_png(path: &Path) -> RgbImage {
    let img = image::open(path).expect("read png").to_rgb8();
    let (w, h) = img.dimensions();
    RgbImage::from_interleaved(w as usize, h as usize, img.as_raw()).expect("rgb")
}

fn iwt_reconstruction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1117);
    let mut mismatches = 0usize;
    for i in 0..1000 {
        // always include the extremes of the size range
        let (w, h) = match i {
            0 => (4, 4),
            1 => (256, 256),
            _ => (2 * rng.random_range(2..=128), 2 * rng.random_range(2..=128)),
        };
        let p = random_plane(&mut rng, w, h);
        let back = iwt::inverse(&iwt::forward(&p).expect("forward")).expect("inverse");
        mismatches += p
            .samples()
            .iter()
            .zip(back.samples())
            .filter(|(a, b)| a != b)
            .count();
    }
    Outcome::check(
        mismatches == 0,
        format!("1000 planes 4x4..256x256, {mismatches} sample mismatches"),
    )
}

struct Combo {
    cover: (&'static str, RgbImage),
    secret1: ImagePlane,
    secret2: ImagePlane,
    passphrase: String,
    channels: ChannelPair,
}

fn combos() -> Vec<Combo> {
    let set = corpus::standard_set();
    let earth = set.secrets[0].1.clone();
    let football = set.secrets[1].1.clone();
    let channel_cycle = [
        ChannelPair::GREEN_BLUE,
        ChannelPair::RED_GREEN,
        ChannelPair::GREEN_BLUE,
        ChannelPair::RED_BLUE,
    ];
    let mut out = Vec::new();
    let mut k = 0;
    for cover in &set.covers {
        for (s1, s2) in [(&earth, &football), (&football, &earth)] {
            for pass in [
                "correct horse battery staple",
                "\u{1F511} \u{00e9}t\u{00e9} 2024",
            ] {
                out.push(Combo {
                    cover: cover.clone(),
                    secret1: s1.clone(),
                    secret2: s2.clone(),
                    passphrase: pass.to_string(),
                    channels: channel_cycle[k % channel_cycle.len()],
                });
                k += 1;
            }
        }
    }
    out
}

fn key_round_trip(domain: Domain) -> Outcome {
    let dir = scratch_dir();
    let mut failures = Vec::new();
    let mut max_iterations = 0;
    let all = combos();
    for (i, c) in all.iter().enumerate() {
        let req = EmbedRequest::new(
            c.cover.1.clone(),
            c.secret1.clone(),
            c.secret2.clone(),
            &c.passphrase,
            domain,
        )
        .with_channels(c.channels);
        let emb = match pipeline::embed(&req) {
            Ok(e) => e,
            Err(e) => {
                failures.push(format!("#{i} {} embed: {e}", c.cover.0));
                continue;
            }
        };
        max_iterations = max_iterations.max(emb.repair_iterations);
        let path = dir.join(format!("{domain}-{i}.png"));
        save_png(&emb.stego, &path);
        let loaded = load_png(&path);
        if loaded != emb.stego {
            failures.push(format!("#{i} png round trip changed pixels"));
        }
        match pipeline::extract(&loaded, c.passphrase.as_bytes(), domain, c.channels) {
            Ok(out) if out.key1 == emb.key1 && out.key2 == emb.key2 => {}
            Ok(_) => failures.push(format!("#{i} {} keys differ", c.cover.0)),
            Err(e) => failures.push(format!("#{i} {} extract: {e}", c.cover.0)),
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    let mut detail = format!(
        "{} combinations via PNG, {} failures, max repair rounds {max_iterations}",
        all.len(),
        failures.len()
    );
    if !failures.is_empty() {
        detail += &format!(": {}", failures.join("; "));
    }
    let within = domain == Domain::Rgb || max_iterations <= pipeline::MAX_REPAIR_ITERATIONS;
    Outcome::check(failures.is_empty() && within, detail)
}

fn ll_invariance() -> Outcome {
    let mut checked = 0;
    let mut differing = Vec::new();
    for (i, c) in combos().iter().enumerate() {
        let req = EmbedRequest::new(
            c.cover.1.clone(),
            c.secret1.clone(),
            c.secret2.clone(),
            &c.passphrase,
            Domain::Rgb,
        )
        .with_channels(c.channels);
        let Ok(emb) = pipeline::embed(&req) else {
            differing.push(format!("#{i} embed failed"));
            continue;
        };
        for ch in [c.channels.first(), c.channels.second()] {
            let before = iwt::forward(c.cover.1.channel(ch)).expect("forward").ll;
            let after = iwt::forward(emb.stego.channel(ch)).expect("forward").ll;
            checked += 1;
            if before != after {
                differing.push(format!("#{i} {ch:?}"));
            }
        }
        if emb.stego.channel(c.channels.untouched()) != c.cover.1.channel(c.channels.untouched()) {
            differing.push(format!("#{i} untouched channel changed"));
        }
    }
    Outcome::check(
        differing.is_empty(),
        format!("{checked} carrier LL bands compared, differing: {differing:?}"),
    )
}

struct TableRun {
    cover: &'static str,
    domain: Domain,
    stego_db: f64,
    secret_db: [f64; 2],
    elapsed: Duration,
}

fn table_runs() -> Result<Vec<TableRun>, String> {
    let set = corpus::standard_set();
    let (earth, football) = (&set.secrets[0].1, &set.secrets[1].1);
    let mut runs = Vec::new();
    for (name, cover) in &set.covers {
        for domain in [Domain::Rgb, Domain::Ycbcr] {
            let started = Instant::now();
            let req = EmbedRequest::new(
                cover.clone(),
                earth.clone(),
                football.clone(),
                "table",
                domain,
            );
            let emb = pipeline::embed(&req).map_err(|e| format!("{name} {domain}: {e}"))?;
            let out = pipeline::extract(&emb.stego, b"table", domain, ChannelPair::default())
                .map_err(|e| format!("{name} {domain}: {e}"))?;
            let elapsed = started.elapsed();
            runs.push(TableRun {
                cover: name,
                domain,
                stego_db: metrics::rgb_psnr(cover, &emb.stego).expect("same dims"),
                secret_db: [
                    metrics::psnr(earth, &out.secret1, metrics::PEAK_8BIT).expect("same dims"),
                    metrics::psnr(football, &out.secret2, metrics::PEAK_8BIT).expect("same dims"),
                ],
                elapsed,
            });
        }
    }
    Ok(runs)
}

fn find<'a>(runs: &'a [TableRun], cover: &str, domain: Domain) -> &'a TableRun {
    runs.iter()
        .find(|r| r.cover == cover && r.domain == domain)
        .expect("every cover runs in both domains")
}

fn stego_table(runs: &Result<Vec<TableRun>, String>) -> Outcome {
    let runs = match runs {
        Ok(r) => r,
        Err(e) => return Outcome::check(false, e.clone()),
    };
    let mut pass = true;
    let mut cells = Vec::new();
    for cover in ["baboon", "peppers"] {
        let rgb = find(runs, cover, Domain::Rgb);
        let ycc = find(runs, cover, Domain::Ycbcr);
        pass &= rgb.stego_db >= STEGO_FLOOR_RGB
            && ycc.stego_db >= STEGO_FLOOR_YCBCR
            && rgb.stego_db > ycc.stego_db;
        pass &= rgb.elapsed < RUN_BUDGET && ycc.elapsed < RUN_BUDGET;
        cells.push(format!(
            "{cover}: rgb {:.2} dB ({} ms), ycbcr {:.2} dB ({} ms)",
            rgb.stego_db,
            rgb.elapsed.as_millis(),
            ycc.stego_db,
            ycc.elapsed.as_millis()
        ));
    }
    Outcome::check(
        pass,
        format!("stego PSNR, need rgb >= {STEGO_FLOOR_RGB}, ycbcr >= {STEGO_FLOOR_YCBCR}, rgb > ycbcr: {}", cells.join("; ")),
    )
}

fn value_range(p: &ImagePlane) -> (i32, i32) {
    let s = p.samples();
    (
        *s.iter().min().expect("non-empty"),
        *s.iter().max().expect("non-empty"),
    )
}

fn secret_table(runs: &Result<Vec<TableRun>, String>) -> Outcome {
    let runs = match runs {
        Ok(r) => r,
        Err(e) => return Outcome::check(false, e.clone()),
    };
    let set = corpus::standard_set();
    let mut pass = true;
    let mut cells = Vec::new();
    for (k, (secret_name, secret)) in set.secrets.iter().enumerate() {
        let ceiling = pipeline::secret_ceiling(secret).expect("even secret");
        let ceiling_db = metrics::psnr(secret, &ceiling, metrics::PEAK_8BIT).expect("same dims");
        for cover in ["baboon", "peppers"] {
            let rgb = find(runs, cover, Domain::Rgb).secret_db[k];
            let ycc = find(runs, cover, Domain::Ycbcr).secret_db[k];
            pass &= ycc > rgb && rgb >= SECRET_FLOOR && ycc >= SECRET_FLOOR;
            cells.push(format!(
                "{secret_name}@{cover}: rgb {rgb:.2}, ycbcr {ycc:.2}, ceiling {ceiling_db:.2}"
            ));
        }
    }

    // value ranges of the block dictionaries against the secrets they must match
    let mut ranges = Vec::new();
    for (name, cover) in &set.covers {
        let ycc = rgb_to_ycbcr(cover);
        for (label, plane) in [
            ("G", cover.channel(Channel::Green)),
            ("B", cover.channel(Channel::Blue)),
            ("Cb", &ycc.cb),
            ("Cr", &ycc.cr),
        ] {
            let (lo, hi) = value_range(&iwt::forward(plane).expect("forward").ll);
            ranges.push(format!("{name}.{label} {lo}..{hi}"));
        }
    }
    for (name, secret) in &set.secrets {
        let (lo, hi) = value_range(&iwt::forward(secret).expect("forward").ll);
        ranges.push(format!("{name} {lo}..{hi}"));
    }
    Outcome::check(
        pass,
        format!(
            "secret PSNR, need ycbcr > rgb and both >= {SECRET_FLOOR}: {}; LL value ranges: {}",
            cells.join("; "),
            ranges.join(", ")
        ),
    )
}

fn oracle_key(cover_ll: &ImagePlane, secret_ll: &ImagePlane) -> Vec<u32> {
    let block = |p: &ImagePlane, k: usize| {
        let bw = p.width() / 2;
        let (bx, by) = (k % bw, k / bw);
        [
            p.get(2 * bx, 2 * by),
            p.get(2 * bx + 1, 2 * by),
            p.get(2 * bx, 2 * by + 1),
            p.get(2 * bx + 1, 2 * by + 1),
        ]
    };
    let nc = cover_ll.len() / 4;
    let ns = secret_ll.len() / 4;
    let mut key = Vec::with_capacity(ns);
    for j in 0..ns {
        let s = block(secret_ll, j);
        let mut best = (i64::MAX, 0u32);
        for i in 0..nc {
            let c = block(cover_ll, i);
            let d: i64 = (0..4).map(|t| i64::from(c[t] - s[t]).pow(2)).sum();
            if d < best.0 {
                best = (d, i as u32);
            }
        }
        key.push(best.1);
    }
    key
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC1E);
    let mut key_mismatches = 0;
    for _ in 0..100 {
        let (cw, ch) = (2 * rng.random_range(1..=8), 2 * rng.random_range(1..=8));
        let (sw, sh) = (2 * rng.random_range(1..=6), 2 * rng.random_range(1..=6));
        // small value range forces many ties
        let top = if rng.random_bool(0.3) { 3 } else { 255 };
        let cover = ImagePlane::from_fn(cw, ch, |_, _| rng.random_range(0..=top));
        let secret = ImagePlane::from_fn(sw, sh, |_, _| rng.random_range(0..=top));
        let key = blockmatch::build_key(&cover, &secret).expect("valid");
        if key.entries() != oracle_key(&cover, &secret).as_slice() {
            key_mismatches += 1;
        }
    }

    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (w, h) = (rng.random_range(1..=64), rng.random_range(1..=64));
        let a = random_plane(&mut rng, w, h);
        let b = random_plane(&mut rng, w, h);
        let naive: f64 = a
            .samples()
            .iter()
            .zip(b.samples())
            .map(|(&x, &y)| ((x - y) as f64).powi(2))
            .sum::<f64>()
            / (w * h) as f64;
        let naive_psnr = 10.0 * (255.0f64 * 255.0 / naive).log10();
        let m = metrics::mse(&a, &b).expect("same dims");
        let p = metrics::psnr(&a, &b, 255.0).expect("same dims");
        worst = worst
            .max((m - naive).abs() / naive)
            .max((p - naive_psnr).abs() / naive_psnr);
    }
    Outcome::check(
        key_mismatches == 0 && worst <= 1e-9,
        format!("block matching: {key_mismatches}/100 instances differ; MSE/PSNR worst relative error {worst:.1e}"),
    )
}

/// Decoder written from the container description alone, sharing nothing with
/// the library except the wavelet transform.
mod independent {
    use std::collections::HashMap;

    pub fn payload_bytes(lh: &[i32], hl: &[i32], hh: &[i32]) -> Option<Vec<u8>> {
        let bits: Vec<u8> = lh
            .iter()
            .chain(hl)
            .chain(hh)
            .map(|c| ((c.abs() >> 3) & 1) as u8)
            .collect();
        let len = bits[..32]
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let body = bits.get(32..32 + len)?;
        Some(
            body.chunks(8)
                .map(|c| {
                    c.iter()
                        .enumerate()
                        .fold(0u8, |acc, (i, &b)| acc | (b << (7 - i)))
                })
                .collect(),
        )
    }

    pub fn keystream_xor(data: &[u8], passphrase: &[u8]) -> Vec<u8> {
        let mut h: u64 = 0xcbf29ce484222325;
        for &b in passphrase {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        let mut state = h;
        let mut stream = Vec::new();
        while stream.len() < data.len() {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            stream.extend_from_slice(&(z ^ (z >> 31)).to_le_bytes());
        }
        data.iter().zip(stream).map(|(d, k)| d ^ k).collect()
    }

    fn inflate(table_and_bits: &[u8], out_len: usize) -> Option<Vec<u8>> {
        let mut lens = Vec::new();
        for &b in &table_and_bits[..128] {
            lens.push(b >> 4);
            lens.push(b & 15);
        }
        let mut symbols: Vec<usize> = (0..256).filter(|&s| lens[s] > 0).collect();
        symbols.sort_by_key(|&s| (lens[s], s));
        let mut table = HashMap::new();
        let (mut code, mut prev) = (0u32, 0u8);
        for (n, &s) in symbols.iter().enumerate() {
            if n > 0 {
                code += 1;
            }
            code <<= lens[s] - prev;
            prev = lens[s];
            table.insert((lens[s], code), s as u8);
        }
        let bits = &table_and_bits[128..];
        let mut out = Vec::new();
        let (mut code, mut len, mut pos) = (0u32, 0u8, 0usize);
        while out.len() < out_len {
            let bit = (bits.get(pos / 8)? >> (7 - pos % 8)) & 1;
            pos += 1;
            code = (code << 1) | bit as u32;
            len += 1;
            if let Some(&s) = table.get(&(len, code)) {
                out.push(s);
                code = 0;
                len = 0;
            }
            if len > 15 {
                return None;
            }
        }
        Some(out)
    }

    /// (nc, blocks_x, blocks_y, indices)
    pub fn container(data: &[u8]) -> Option<(usize, usize, usize, Vec<u32>)> {
        if data.get(..3)? != b"SK\x01" {
            return None;
        }
        let u16_at = |i: usize| u16::from_be_bytes([data[i], data[i + 1]]) as usize;
        let (nc, bx, by, width, mode) =
            (u16_at(3), u16_at(5), u16_at(7), data[9] as usize, data[10]);
        let body_len = u32::from_be_bytes(data[11..15].try_into().ok()?) as usize;
        let body = data.get(15..15 + body_len)?;
        let count = bx * by;
        let packed_len = (count * width).div_ceil(8);
        let packed = match mode {
            0 => body.to_vec(),
            1 => inflate(body, packed_len)?,
            _ => return None,
        };
        let bit = |i: usize| ((packed[i / 8] >> (7 - i % 8)) & 1) as u32;
        let indices = (0..count)
            .map(|k| (0..width).fold(0, |acc, j| (acc << 1) | bit(k * width + j)))
            .collect();
        Some((nc, bx, by, indices))
    }
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata/golden")
}

fn golden_interchange() -> Outcome {
    let dir = golden_dir();
    let mut problems = Vec::new();
    for domain in [Domain::Rgb, Domain::Ycbcr] {
        let stego = load_png(&dir.join(format!("stego_{domain}.png")));
        let expected: Vec<MatchKey> = (1..=2)
            .map(|k| {
                let bytes = std::fs::read(dir.join(format!("{domain}_key{k}.bin")))
                    .expect("golden key file");
                keycodec::deserialize(&bytes).expect("golden key parses")
            })
            .collect();

        match pipeline::extract(
            &stego,
            GOLDEN_PASSPHRASE.as_bytes(),
            domain,
            ChannelPair::GREEN_BLUE,
        ) {
            Ok(out) if out.key1 == expected[0] && out.key2 == expected[1] => {}
            Ok(_) => problems.push(format!("{domain}: library extraction gives different keys")),
            Err(e) => problems.push(format!("{domain}: library extraction failed: {e}")),
        }

        let planes = match domain {
            Domain::Rgb => [
                stego.channel(Channel::Green).clone(),
                stego.channel(Channel::Blue).clone(),
            ],
            Domain::Ycbcr => {
                let ycc = rgb_to_ycbcr(&stego);
                [ycc.cb, ycc.cr]
            }
        };
        for (k, plane) in planes.iter().enumerate() {
            let sb = iwt::forward(plane).expect("forward");
            let decoded =
                independent::payload_bytes(sb.lh.samples(), sb.hl.samples(), sb.hh.samples())
                    .map(|b| independent::keystream_xor(&b, GOLDEN_PASSPHRASE.as_bytes()))
                    .and_then(|c| independent::container(&c));
            let want = &expected[k];
            match decoded {
                Some((nc, bx, by, idx))
                    if nc == want.nc()
                        && bx == want.secret_blocks_x()
                        && by == want.secret_blocks_y()
                        && idx == want.entries() => {}
                _ => problems.push(format!(
                    "{domain}: independent decoder disagrees on key {}",
                    k + 1
                )),
            }
        }
    }
    Outcome::check(
        problems.is_empty(),
        format!("rgb and ycbcr golden files, two decoders: {problems:?}"),
    )
}

fn colorspace_exactness() -> Outcome {
    let grey_bad = (0..=255)
        .filter(|&v| pixel_to_ycbcr(v, v, v) != (v, 128, 128))
        .count();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC010);
    let mut worst = 0;
    for _ in 0..1_000_000 {
        let (r, g, b) = (
            rng.random_range(0..=255),
            rng.random_range(0..=255),
            rng.random_range(0..=255),
        );
        let (y, cb, cr) = pixel_to_ycbcr(r, g, b);
        let (r2, g2, b2) = pixel_to_rgb(y, cb, cr);
        worst = worst
            .max((r - r2).abs())
            .max((g - g2).abs())
            .max((b - b2).abs());
    }
    Outcome::check(
        grey_bad == 0 && worst <= 2,
        format!("{grey_bad} grey levels inexact; worst round-trip error {worst} over 10^6 pixels"),
    )
}

fn centered_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCE27);
    let cover = corpus::baboon(256);
    let secret = corpus::earth(128);
    let mut failures = 0;
    for trial in 0..10 {
        let plane = if trial % 2 == 0 {
            rgb_to_ycbcr(&cover).cb
        } else {
            random_plane(&mut rng, 256, 256)
        };
        let sb = iwt::forward(&plane).expect("forward");
        let key = blockmatch::build_key(&sb.ll, &iwt::forward(&secret).expect("forward").ll)
            .expect("key");
        let sealed = keycodec::seal(&key, &keycodec::CipherSpec::new(format!("trial {trial}")))
            .expect("seal");
        let payload = Payload::from_bytes(&sealed);
        let mut marked = bitplane::embed(&sb, &payload, EmbedMode::Centered).expect("fits");
        for band in [&mut marked.lh, &mut marked.hl, &mut marked.hh] {
            for c in band.samples_mut() {
                *c += rng.random_range(-3..=3);
            }
        }
        if bitplane::extract(&marked).ok().as_ref() != Some(&payload) {
            failures += 1;
        }
    }
    Outcome::check(
        failures == 0,
        format!("10 trials with +/-3 noise on every detail coefficient, {failures} failed"),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let runs = &table_runs();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 iwt perfect reconstruction", Box::new(iwt_reconstruction)),
        (
            "2 key round trip, rgb",
            Box::new(|| key_round_trip(Domain::Rgb)),
        ),
        (
            "3 key round trip, ycbcr",
            Box::new(|| key_round_trip(Domain::Ycbcr)),
        ),
        ("4 rgb carrier LL invariance", Box::new(ll_invariance)),
        (
            "5 stego PSNR bounds and trend",
            Box::new(|| stego_table(runs)),
        ),
        (
            "6 secret PSNR bounds and trend",
            Box::new(|| secret_table(runs)),
        ),
        ("7 oracle equivalence", Box::new(oracle_equivalence)),
        ("8 golden interchange", Box::new(golden_interchange)),
        ("9 colorspace exactness", Box::new(colorspace_exactness)),
        ("10 centered-mode robustness", Box::new(centered_robustness)),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::check(false, format!("panicked: {msg}"))
        });
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
