/// Normalized word tokens of one document.
pub type TokenStream = Vec<String>;

/// Splits tweet-like text into lowercase word tokens.
///
/// Whitespace-separated chunks that look like URLs (`scheme://...` or
/// `www....`) or @-mentions are dropped whole. Apostrophes are deleted so
/// contractions stay one word; every other non-alphanumeric character
/// (including the `#` of a hashtag) separates tokens.
pub fn tokenize(text: &str) -> TokenStream {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        if is_url(chunk) || chunk.starts_with('@') {
            continue;
        }
        let mut current = String::new();
        for c in chunk.chars() {
            if c.is_alphanumeric() {
                current.extend(c.to_lowercase());
            } else if c == '\'' || c == '\u{2019}' {
                continue;
            } else if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            tokens.push(current);
        }
    }
    tokens
}

fn is_url(chunk: &str) -> bool {
    chunk.contains("://") || chunk.get(..4).is_some_and(|p| p.eq_ignore_ascii_case("www."))
}

/// Tokens of `text` with every whole-token occurrence of `label` removed.
pub fn tokenize_without(text: &str, label: &str) -> TokenStream {
    let label = label.to_lowercase();
    let mut tokens = tokenize(text);
    tokens.retain(|t| *t != label);
    tokens
}
