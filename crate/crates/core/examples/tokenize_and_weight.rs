//! Tokenization, label stripping and log-entropy term weights.

use affectmap::semspace::{build_term_doc, log_entropy, tokenize, tokenize_without};

fn main() -> affectmap::Result<()> {
    let tweets = [
        "Happy!! so HAPPY @friend http://t.co/x",
        "can't stop smiling #happy www.example.com",
        "sunday rain, so sad",
        "rain rain everywhere",
    ];
    for t in tweets {
        println!("{t:?}\n  -> {:?}", tokenize(t));
    }
    println!("without its label: {:?}\n", tokenize_without(tweets[0], "happy"));

    let streams: Vec<_> = tweets.iter().map(|t| tokenize(t)).collect();
    let tdm = build_term_doc(&streams)?;
    let weighted = log_entropy(&tdm);
    println!("{:<10} {:>6}  per-document weights", "term", "global");
    for (i, term) in tdm.vocab.iter().enumerate() {
        let row: Vec<String> = (0..tdm.n_docs())
            .map(|d| format!("{:.3}", weighted.matrix.get(i, d)))
            .collect();
        println!("{term:<10} {:>6.3}  {}", weighted.global[i], row.join(" "));
    }
    Ok(())
}
