//! Generate a corpus, analyze it end to end and list the written files.
//!
//!     cargo run --release --example full_pipeline [OUT_DIR]

use std::path::PathBuf;

use affectmap::corpus::GeneratorSpec;
use affectmap::pipeline::{analyze, generate, RunConfig};

fn main() -> affectmap::Result<()> {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("affectmap-example"));
    std::fs::create_dir_all(&out).map_err(affectmap::Error::Stream)?;

    let input = out.join("corpus.jsonl");
    let spec = GeneratorSpec {
        n_per_emotion: 450,
        overlap: 0.6,
        ..GeneratorSpec::default()
    };
    let n = generate(&spec, 2012, &input)?;
    println!("generated {n} documents");

    let mut config = RunConfig::new(&input, out.join("results"));
    config.per_emotion = 150;
    config.seed = 2012;
    let analysis = analyze(&config)?;
    print!("{}", analysis.summary());
    for o in &analysis.outputs {
        println!("{:<28} {:>7} bytes  {}", o.file, o.bytes, &o.sha256[..16]);
    }
    println!("results in {}", config.out.display());
    Ok(())
}
