//! Nearest-neighbour relabelling on a synthetic corpus with planted
//! vocabularies, from fully separated to fully mixed.

use affectmap::corpus::{build_subcorpus, generate_synthetic, GeneratorSpec};
use affectmap::delsar::run_delsar_detailed;
use affectmap::semspace::SpaceBuilder;

fn main() -> affectmap::Result<()> {
    for overlap in [0.0, 0.5, 0.9, 1.0] {
        let spec = GeneratorSpec {
            n_per_emotion: 200,
            overlap,
            ..GeneratorSpec::default()
        };
        let docs = generate_synthetic(&spec, 7)?;
        let sub = build_subcorpus(&docs, "synthetic", &spec.emotions, 200)?;
        let run = run_delsar_detailed(&sub, &SpaceBuilder::default())?;
        let diag: Vec<f64> = (0..run.matrix.size())
            .map(|e| run.matrix.diagonal_fraction(e))
            .collect();
        let mean = diag.iter().sum::<f64>() / diag.len() as f64;
        println!(
            "overlap {overlap:.1}: mean diagonal share {mean:.3}, vocabulary {}, {} dimensions",
            run.vocabulary, run.space_dimension
        );
        if overlap == 0.5 {
            let mut out = Vec::new();
            run.matrix.write_csv(&mut out)?;
            println!("{}", String::from_utf8_lossy(&out));
        }
    }
    Ok(())
}
