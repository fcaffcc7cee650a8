//! Parse a small JSON Lines corpus, drop duplicate texts and count
//! documents per emotion and region.
//!
//!     cargo run --example corpus_census

use affectmap::corpus::{dedupe, parse_corpus, KeywordSet, RegionConfig};
use affectmap::pipeline::Census;

const CORPUS: &str = r#"
{"id":"1","text":"So #happy today!","emotion":"happy","timezone":"Tokyo","created_at":"2012-10-19T08:00:00Z"}
{"id":"2","text":"so  #HAPPY   today!","emotion":"happy","timezone":"London","created_at":"2012-10-19T09:00:00Z"}
{"id":"3","text":"feeling sad about the rain","emotion":"sad","timezone":"Paris","created_at":"2012-10-19T10:00:00Z"}
{"id":"4","text":"calm evening","emotion":"calm","timezone":"Pacific Time (US & Canada)","created_at":"2012-10-19T11:00:00Z"}
{"id":"5","text":"tired and sleepy","emotion":"sleepy","timezone":"Hawaii","created_at":"2012-10-19T12:00:00Z"}
{"id":"6","text":"bored now","emotion":"bored","timezone":"Tokyo","created_at":"2012-10-19T13:00:00Z"}
{"id":"7","text":"","emotion":"sad","timezone":"Tokyo","created_at":"2012-10-19T14:00:00Z"}
"#;

fn main() -> affectmap::Result<()> {
    let keywords = KeywordSet::default();
    let parsed = parse_corpus(CORPUS.as_bytes(), &keywords)?;
    for err in &parsed.errors {
        println!("rejected {err}");
    }
    for (label, n) in &parsed.skipped_labels {
        println!("skipped {n} document(s) labelled `{label}`");
    }
    let before = parsed.documents.len();
    let docs = dedupe(parsed.documents);
    println!("{} documents, {} duplicate(s) removed\n", docs.len(), before - docs.len());

    let census = Census::count(&docs, &keywords, &RegionConfig::default());
    print!("{}", census.render());
    Ok(())
}
