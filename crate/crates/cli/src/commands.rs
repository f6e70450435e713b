use std::env;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;
use stego_core::{
    corpus, keycodec, metrics, pipeline, ChannelPair, Domain, EmbedRequest, MatchKey,
};

use crate::args::{CompareArgs, CorpusArgs, EmbedArgs, ExtractArgs, KeyArgs};
use crate::failure::Invalid;
use crate::imageio::{self, Picture};

/// PSNR in dB, serialized as the string `"inf"` for identical images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Db(pub f64);

impl Serialize for Db {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

fn passphrase(key: &KeyArgs) -> Result<Vec<u8>> {
    match env::var_os(&key.passphrase_env) {
        Some(v) => Ok(v.into_encoded_bytes()),
        None => Err(Invalid(format!(
            "environment variable {} is not set",
            key.passphrase_env
        ))
        .into()),
    }
}

fn channels(key: &KeyArgs) -> Result<ChannelPair> {
    match (key.domain, key.channels) {
        (Domain::Ycbcr, Some(_)) => {
            Err(Invalid("--channels only applies to the rgb domain".into()).into())
        }
        (_, c) => Ok(c.unwrap_or_default()),
    }
}

pub fn channel_label(domain: Domain, channels: ChannelPair) -> String {
    match domain {
        Domain::Rgb => channels.to_string(),
        Domain::Ycbcr => "cbcr".to_string(),
    }
}

fn key_json(key: &MatchKey) -> Result<serde_json::Value> {
    let bytes = keycodec::serialize(key)?;
    let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
    Ok(json!({
        "nc": key.nc(),
        "blocks_x": key.secret_blocks_x(),
        "blocks_y": key.secret_blocks_y(),
        "container": hex,
    }))
}

pub fn embed(args: &EmbedArgs) -> Result<()> {
    let pass = passphrase(&args.key)?;
    let channels = channels(&args.key)?;
    let cover = imageio::read_rgb(&args.cover)?;
    let secret1 = imageio::read_grey(&args.secret1)?;
    let secret2 = imageio::read_grey(&args.secret2)?;
    // fail on the output name before the expensive part
    imageio::check_rgb_output(&args.out)?;

    let req =
        EmbedRequest::new(cover, secret1, secret2, pass, args.key.domain).with_channels(channels);
    let emb = pipeline::embed(&req).context("embedding failed")?;
    imageio::write_rgb(&args.out, &emb.stego)?;

    if let Some(path) = &args.dump_key {
        let doc = json!({ "key1": key_json(&emb.key1)?, "key2": key_json(&emb.key2)? });
        fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?;
    }

    let quality = metrics::rgb_quality(&req.cover, &emb.stego)?;
    let report = json!({
        "out": args.out,
        "domain": args.key.domain.to_string(),
        "channels": channel_label(args.key.domain, channels),
        "psnr_db": Db(quality.psnr_db),
        "mse": quality.mse,
        "repair_iterations": emb.repair_iterations,
    });
    println!("{report}");
    Ok(())
}

pub fn extract(args: &ExtractArgs) -> Result<()> {
    let pass = passphrase(&args.key)?;
    let channels = channels(&args.key)?;
    imageio::check_grey_output(&args.out1)?;
    imageio::check_grey_output(&args.out2)?;
    let stego = imageio::read_rgb(&args.stego)?;
    let out =
        pipeline::extract(&stego, &pass, args.key.domain, channels).context("extraction failed")?;
    imageio::write_grey(&args.out1, &out.secret1)?;
    imageio::write_grey(&args.out2, &out.secret2)?;
    println!(
        "{}",
        json!({
            "out1": args.out1,
            "out2": args.out2,
            "domain": args.key.domain.to_string(),
            "blocks1": out.key1.len(),
            "blocks2": out.key2.len(),
        })
    );
    Ok(())
}

pub fn compare(args: &CompareArgs) -> Result<()> {
    let quality = match (
        imageio::read_any(&args.first)?,
        imageio::read_any(&args.second)?,
    ) {
        (Picture::Rgb(a), Picture::Rgb(b)) => metrics::rgb_quality(&a, &b)?,
        (Picture::Grey(a), Picture::Grey(b)) => metrics::plane_quality(&a, &b)?,
        _ => return Err(Invalid("cannot compare a colour image with a grey one".into()).into()),
    };
    println!(
        "{}",
        json!({ "mse": quality.mse, "psnr_db": Db(quality.psnr_db) })
    );
    Ok(())
}

pub fn write_corpus(args: &CorpusArgs) -> Result<()> {
    if args.size < 8 || !args.size.is_multiple_of(8) {
        return Err(Invalid(format!(
            "--size must be a positive multiple of 8, got {}",
            args.size
        ))
        .into());
    }
    let covers = args.out.join("covers");
    let secrets = args.out.join("secrets");
    for dir in [&covers, &secrets] {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let half = args.size / 2;
    imageio::write_rgb(&covers.join("baboon.png"), &corpus::baboon(args.size))?;
    imageio::write_rgb(&covers.join("peppers.png"), &corpus::peppers(args.size))?;
    imageio::write_grey(&secrets.join("earth.png"), &corpus::earth(half))?;
    imageio::write_grey(&secrets.join("football.png"), &corpus::football(half))?;
    println!("{}", json!({ "covers": covers, "secrets": secrets }));
    Ok(())
}

pub fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}
