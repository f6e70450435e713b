//! Every cover against every pair of secrets, in both domains.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use stego_core::{metrics, pipeline, ChannelPair, Domain, EmbedRequest, ImagePlane, RgbImage};

use crate::args::BenchArgs;
use crate::commands::{channel_label, file_stem, Db};
use crate::failure::Invalid;
use crate::imageio;

const IMAGE_EXTENSIONS: [&str; 5] = ["png", "bmp", "ppm", "pgm", "pnm"];

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub cover_name: String,
    pub secret1_name: String,
    pub secret2_name: String,
    pub domain: String,
    pub channels: String,
    pub stego_psnr_db: Option<Db>,
    pub secret1_psnr_db: Option<Db>,
    pub secret2_psnr_db: Option<Db>,
    pub embed_ms: Option<u64>,
    pub extract_ms: Option<u64>,
    pub secret1_ceiling_db: Option<Db>,
    pub secret2_ceiling_db: Option<Db>,
    pub repair_iterations: Option<usize>,
    pub error: String,
}

impl Row {
    fn key(&self) -> (&str, &str, &str, &str) {
        (
            &self.cover_name,
            &self.secret1_name,
            &self.secret2_name,
            &self.domain,
        )
    }
}

fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot list {}", dir.display()))? {
        let path = entry?.path();
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        if path.is_file() && ext.is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.as_str())) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

type Loaded<T> = (String, std::result::Result<T, String>);

fn load<T>(paths: &[PathBuf], read: fn(&Path) -> Result<T>) -> Vec<Loaded<T>> {
    paths
        .iter()
        .map(|p| (file_stem(p), read(p).map_err(|e| format!("{e:#}"))))
        .collect()
}

struct Job<'a> {
    cover: &'a Loaded<RgbImage>,
    secret1: &'a Loaded<ImagePlane>,
    secret2: &'a Loaded<ImagePlane>,
    domain: Domain,
    channels: ChannelPair,
}

fn run(job: &Job, omit_timings: bool) -> Row {
    let mut row = Row {
        cover_name: job.cover.0.clone(),
        secret1_name: job.secret1.0.clone(),
        secret2_name: job.secret2.0.clone(),
        domain: job.domain.to_string(),
        channels: channel_label(job.domain, job.channels),
        stego_psnr_db: None,
        secret1_psnr_db: None,
        secret2_psnr_db: None,
        embed_ms: None,
        extract_ms: None,
        secret1_ceiling_db: None,
        secret2_ceiling_db: None,
        repair_iterations: None,
        error: String::new(),
    };
    if let Err(e) = measure(job, &mut row, omit_timings) {
        row.error = e;
    }
    row
}

fn measure(job: &Job, row: &mut Row, omit_timings: bool) -> std::result::Result<(), String> {
    let cover = job.cover.1.as_ref()?;
    let s1 = job.secret1.1.as_ref()?;
    let s2 = job.secret2.1.as_ref()?;
    let err = |e: stego_core::Error| e.to_string();

    let req = EmbedRequest::new(cover.clone(), s1.clone(), s2.clone(), b"bench", job.domain)
        .with_channels(job.channels);
    let started = Instant::now();
    let emb = pipeline::embed(&req).map_err(err)?;
    let embed_ms = started.elapsed().as_millis() as u64;
    row.stego_psnr_db = Some(Db(metrics::rgb_psnr(cover, &emb.stego).map_err(err)?));
    row.repair_iterations = Some(emb.repair_iterations);

    let started = Instant::now();
    let out = pipeline::extract(&emb.stego, b"bench", job.domain, job.channels).map_err(err)?;
    let extract_ms = started.elapsed().as_millis() as u64;
    if !omit_timings {
        row.embed_ms = Some(embed_ms);
        row.extract_ms = Some(extract_ms);
    }
    if out.key1 != emb.key1 || out.key2 != emb.key2 {
        return Err("extracted keys differ from the embedded keys".into());
    }

    let score = |a: &ImagePlane, b: &ImagePlane| {
        metrics::psnr(a, b, metrics::PEAK_8BIT).map(Db).map_err(err)
    };
    row.secret1_psnr_db = Some(score(s1, &out.secret1)?);
    row.secret2_psnr_db = Some(score(s2, &out.secret2)?);
    row.secret1_ceiling_db = Some(score(s1, &pipeline::secret_ceiling(s1).map_err(err)?)?);
    row.secret2_ceiling_db = Some(score(s2, &pipeline::secret_ceiling(s2).map_err(err)?)?);
    Ok(())
}

fn comparison(name: &[(&str, String)], rgb: f64, ycbcr: f64, rgb_wins: bool) -> serde_json::Value {
    let mut v: serde_json::Map<String, serde_json::Value> = name
        .iter()
        .map(|(k, s)| (k.to_string(), json!(s)))
        .collect();
    v.insert("rgb_db".into(), json!(Db(rgb)));
    v.insert("ycbcr_db".into(), json!(Db(ycbcr)));
    v.insert(
        "holds".into(),
        json!(if rgb_wins { rgb > ycbcr } else { ycbcr > rgb }),
    );
    serde_json::Value::Object(v)
}

/// Pairs the rgb and ycbcr rows of each run and checks both directions of
/// the domain comparison: stego PSNR higher in rgb, secret PSNR higher in
/// ycbcr.
pub fn summarize(rows: &[Row]) -> serde_json::Value {
    let mut by_run: BTreeMap<(&str, &str, &str), BTreeMap<&str, &Row>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.error.is_empty()) {
        by_run
            .entry((&r.cover_name, &r.secret1_name, &r.secret2_name))
            .or_default()
            .insert(&r.domain, r);
    }
    let mut stego = Vec::new();
    let mut secret = Vec::new();
    for ((cover, s1, s2), domains) in &by_run {
        let (Some(rgb), Some(ycc)) = (domains.get("rgb"), domains.get("ycbcr")) else {
            continue;
        };
        let value = |d: Option<Db>| d.map_or(f64::NAN, |d| d.0);
        stego.push(comparison(
            &[
                ("cover", cover.to_string()),
                ("secret1", s1.to_string()),
                ("secret2", s2.to_string()),
            ],
            value(rgb.stego_psnr_db),
            value(ycc.stego_psnr_db),
            true,
        ));
        for (name, a, b) in [
            (s1, rgb.secret1_psnr_db, ycc.secret1_psnr_db),
            (s2, rgb.secret2_psnr_db, ycc.secret2_psnr_db),
        ] {
            secret.push(comparison(
                &[("cover", cover.to_string()), ("secret", name.to_string())],
                value(a),
                value(b),
                false,
            ));
        }
    }
    let all =
        |v: &[serde_json::Value]| !v.is_empty() && v.iter().all(|c| c["holds"] == json!(true));
    json!({
        "rows": rows.len(),
        "failed": rows.iter().filter(|r| !r.error.is_empty()).count(),
        "stego_rgb_above_ycbcr": all(&stego),
        "secret_ycbcr_above_rgb": all(&secret),
        "stego": stego,
        "secret": secret,
    })
}

pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let cover_paths = list_images(&args.covers)?;
    let secret_paths = list_images(&args.secrets)?;
    if cover_paths.is_empty() {
        return Err(Invalid(format!("no images in {}", args.covers.display())).into());
    }
    if secret_paths.is_empty() {
        return Err(Invalid(format!("no images in {}", args.secrets.display())).into());
    }
    let channels = args.channels.unwrap_or_default();
    let covers = load(&cover_paths, imageio::read_rgb);
    let secrets = load(&secret_paths, imageio::read_grey);

    let pairs: Vec<(usize, usize)> = if secrets.len() == 1 {
        vec![(0, 0)]
    } else {
        (0..secrets.len())
            .flat_map(|i| (i + 1..secrets.len()).map(move |j| (i, j)))
            .collect()
    };
    let mut jobs = Vec::new();
    for cover in &covers {
        for &(i, j) in &pairs {
            for domain in [Domain::Rgb, Domain::Ycbcr] {
                jobs.push(Job {
                    cover,
                    secret1: &secrets[i],
                    secret2: &secrets[j],
                    domain,
                    channels,
                });
            }
        }
    }

    let mut rows: Vec<Row> = jobs.par_iter().map(|j| run(j, args.omit_timings)).collect();
    rows.sort_by(|a, b| a.key().cmp(&b.key()));

    let mut writer = csv::Writer::from_path(&args.out)
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    for row in &rows {
        writer.serialize(row)?;
    }
    writer
        .flush()
        .with_context(|| format!("cannot write {}", args.out.display()))?;

    let summary = summarize(&rows);
    let text = serde_json::to_string_pretty(&summary)?;
    let side = summary_path(&args.out);
    fs::write(&side, text + "\n").with_context(|| format!("cannot write {}", side.display()))?;
    println!("{summary}");
    Ok(())
}
