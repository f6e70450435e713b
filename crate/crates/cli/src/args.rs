use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use stego_core::{ChannelPair, Domain};

#[derive(Debug, Parser)]
#[command(
    name = "iwtstego",
    version,
    about = "Hide two grey-scale images in one colour image"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed two secrets into a cover and write the stego image.
    Embed(EmbedArgs),
    /// Recover both secrets from a stego image.
    Extract(ExtractArgs),
    /// PSNR and MSE between two images of the same shape.
    Compare(CompareArgs),
    /// Run every cover/secret combination in both domains and write a CSV report.
    Bench(BenchArgs),
    /// Write the built-in test images as PNG files.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct KeyArgs {
    #[arg(long, value_parser = parse_domain)]
    pub domain: Domain,
    /// Environment variable holding the passphrase.
    #[arg(long, value_name = "VAR")]
    pub passphrase_env: String,
    /// Carrier channels in the rgb domain: gb, rg or rb.
    #[arg(long, value_parser = parse_channels)]
    pub channels: Option<ChannelPair>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub cover: PathBuf,
    #[arg(long)]
    pub secret1: PathBuf,
    #[arg(long)]
    pub secret2: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub key: KeyArgs,
    /// Write both keys as JSON (block counts plus the serialized container in hex).
    #[arg(long, value_name = "PATH")]
    pub dump_key: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub stego: PathBuf,
    #[arg(long)]
    pub out1: PathBuf,
    #[arg(long)]
    pub out2: PathBuf,
    #[command(flatten)]
    pub key: KeyArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub covers: PathBuf,
    #[arg(long)]
    pub secrets: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Carrier channels for the rgb-domain rows.
    #[arg(long, value_parser = parse_channels)]
    pub channels: Option<ChannelPair>,
    /// Leave the timing columns empty so repeated runs give identical reports.
    #[arg(long)]
    pub omit_timings: bool,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long)]
    pub out: PathBuf,
    /// Cover side length; secrets are half of it.
    #[arg(long, default_value_t = 256)]
    pub size: usize,
}

fn parse_domain(s: &str) -> Result<Domain, String> {
    s.parse()
}

fn parse_channels(s: &str) -> Result<ChannelPair, String> {
    s.parse()
}
