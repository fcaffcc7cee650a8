//! Truncated SVD of a weighted term-document matrix and nearest-neighbour
//! lookup in the reduced space.

use affectmap::semspace::{
    build_term_doc, log_entropy, nearest_document, tokenize, truncated_svd, SpaceBuilder,
    SvdMethod, SvdOptions,
};

fn main() -> affectmap::Result<()> {
    let texts = [
        "sun beach holiday sun",
        "beach holiday waves",
        "exam deadline stress",
        "deadline work stress stress",
        "holiday sun waves",
        "work exam",
    ];
    let streams: Vec<_> = texts.iter().map(|t| tokenize(t)).collect();
    let weighted = log_entropy(&build_term_doc(&streams)?);

    for method in [SvdMethod::Dense, SvdMethod::Lanczos] {
        let opts = SvdOptions {
            method,
            ..SvdOptions::default()
        };
        let svd = truncated_svd(&weighted.matrix, 3, &opts)?;
        let sv: Vec<String> = svd.singular_values.iter().map(|s| format!("{s:.6}")).collect();
        println!("{method:?}: singular values {}", sv.join(", "));
    }

    let space = SpaceBuilder::new(2, 0).build(&streams)?;
    println!("\n{}-dimensional space", space.k());
    for (q, text) in texts.iter().enumerate() {
        let nn = nearest_document(q, &space);
        println!(
            "{text:<28} -> {:<28} cos {:.3}",
            texts[nn],
            space.similarity(q, nn)
        );
    }
    Ok(())
}
