use autorbit_core::{CyclicWord, WordError};

/// Largest generator index mentioned in the text, or 1 when none appears.
/// Used to pick a rank when none is given on the command line.
pub fn infer_rank(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 1usize;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let mut j = i + 1;
            let mut value = 0usize;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                value = value
                    .saturating_mul(10)
                    .saturating_add((bytes[j] - b'0') as usize);
                j += 1;
            }
            if j > i + 1 {
                best = best.max(value);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

/// Parse a word, inferring the rank from the text when none is given.
pub fn parse_word(text: &str, rank: Option<usize>) -> Result<CyclicWord, WordError> {
    CyclicWord::parse(text, rank.unwrap_or_else(|| infer_rank(text)))
}
