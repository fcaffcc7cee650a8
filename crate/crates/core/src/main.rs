use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use affectmap::corpus::{GeneratorSpec, KeywordSet, RegionConfig};
use affectmap::pipeline::{self, RunConfig};
use affectmap::Result;

#[derive(Parser)]
#[command(name = "affectmap", version, about = "Emotion circumplex maps from labelled text")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample subcorpora, relabel by nearest neighbour and write the maps.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// TOML file of `[[region]]` tables; defaults to Asia, Europe and NA.
        #[arg(long)]
        regions: Option<PathBuf>,
        /// Only analyze these regions (repeatable).
        #[arg(long = "region")]
        only: Vec<String>,
        /// Comma-separated emotion keywords.
        #[arg(long, value_delimiter = ',')]
        emotions: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        per_emotion: usize,
        #[arg(long, default_value_t = 6)]
        controls: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 36)]
        dims: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count documents per emotion and region.
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        regions: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        emotions: Vec<String>,
        /// Drop duplicate texts before counting.
        #[arg(long)]
        dedupe: bool,
    },
    /// Write a synthetic corpus from a TOML generator spec.
    Generate {
        /// Generator spec; built-in defaults when absent.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn keywords(list: Vec<String>) -> Result<KeywordSet> {
    if list.is_empty() {
        Ok(KeywordSet::default())
    } else {
        KeywordSet::new(list)
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            input,
            regions,
            only,
            emotions,
            per_emotion,
            controls,
            seed,
            dims,
            out,
        } => {
            let mut config = RunConfig::new(input, out);
            config.regions = regions;
            config.only_regions = only;
            config.emotions = keywords(emotions)?;
            config.per_emotion = per_emotion;
            config.controls = controls;
            config.seed = seed;
            config.dims = dims;
            let analysis = pipeline::analyze(&config)?;
            for r in analysis.clamped() {
                eprintln!(
                    "warning: {} space has {} dimensions, fewer than the {} requested",
                    r.name, r.run.space_dimension, r.run.requested_dimension
                );
            }
            print!("{}", analysis.summary());
            println!("wrote {} files to {}", analysis.outputs.len() + 1, config.out.display());
        }
        Command::Stats {
            input,
            regions,
            emotions,
            dedupe,
        } => {
            let regions = match regions {
                Some(path) => RegionConfig::load(&path)?,
                None => RegionConfig::default(),
            };
            let census = pipeline::stats(&input, &regions, &keywords(emotions)?, dedupe)?;
            print!("{}", census.render());
        }
        Command::Generate { spec, seed, out } => {
            let spec = match spec {
                Some(path) => GeneratorSpec::load(&path)?,
                None => GeneratorSpec::default(),
            };
            let n = pipeline::generate(&spec, seed, &out)?;
            println!("wrote {n} documents to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
