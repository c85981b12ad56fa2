//! Token counting and reduction statistics.

mod bpe;

use alloc::boxed::Box;
use core::fmt;

pub use bpe::{parse_merges, Bpe, BpeError};

/// A token counter.
#[derive(Debug, Clone)]
pub enum Tokenizer {
    /// One token per byte.
    Bytes,
    /// Runs of letters, digits and `_`; every other visible character on its
    /// own; every whitespace run that contains a line break or ends the text.
    Words,
    Bpe(Box<Bpe>),
}

impl Tokenizer {
    pub fn count(&self, text: &str) -> usize {
        match self {
            Tokenizer::Bytes => text.len(),
            Tokenizer::Words => count_words(text),
            Tokenizer::Bpe(bpe) => bpe.count(text),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Tokenizer::Bytes => "builtin_bytes",
            Tokenizer::Words => "builtin_words",
            Tokenizer::Bpe(_) => "bpe",
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn count_words(text: &str) -> usize {
    let mut count = 0;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if is_word_char(c) {
            while chars.peek().is_some_and(|&n| is_word_char(n)) {
                chars.next();
            }
            count += 1;
        } else if c.is_whitespace() {
            let mut breaks = c == '\n' || c == '\r';
            while let Some(&n) = chars.peek() {
                if !n.is_whitespace() {
                    break;
                }
                breaks |= n == '\n' || n == '\r';
                chars.next();
            }
            count += (breaks || chars.peek().is_none()) as usize;
        } else {
            count += 1;
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionStats {
    pub tokens_before: usize,
    pub tokens_after: usize,
    /// `100 * (before - after) / before`; 0 when `before` is 0.
    pub reduction_pct: f64,
}

impl ReductionStats {
    pub fn from_counts(tokens_before: usize, tokens_after: usize) -> Self {
        let reduction_pct = if tokens_before == 0 {
            0.0
        } else {
            100.0 * (tokens_before as f64 - tokens_after as f64) / tokens_before as f64
        };
        ReductionStats { tokens_before, tokens_after, reduction_pct }
    }
}

impl fmt::Display for ReductionStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} ({:.1}%)", self.tokens_before, self.tokens_after, self.reduction_pct)
    }
}

/// Counts both texts with `tokenizer`.
pub fn reduction(before: &str, after: &str, tokenizer: &Tokenizer) -> ReductionStats {
    ReductionStats::from_counts(tokenizer.count(before), tokenizer.count(after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;

    #[test]
    fn byte_counts() {
        assert_eq!(Tokenizer::Bytes.count("abc"), 3);
        assert_eq!(Tokenizer::Bytes.count(""), 0);
    }

    #[test]
    fn word_counts() {
        assert_eq!(Tokenizer::Words.count("int x;"), 3);
        assert_eq!(Tokenizer::Words.count("a  b"), 2);
        assert_eq!(Tokenizer::Words.count(""), 0);
        assert_eq!(Tokenizer::Words.count("a\n    b"), 3);
        assert_eq!(Tokenizer::Words.count("a\r\n\n b"), 3);
        assert_eq!(Tokenizer::Words.count("x==y_1"), 4);
        assert_eq!(Tokenizer::Words.count("  "), 1);
        assert_eq!(Tokenizer::Words.count("a "), 2);
    }

    #[test]
    fn empty_text_counts_zero_everywhere() {
        let bpe = Bpe::new(vec![(String::from("a"), 0)], vec![]).unwrap();
        for t in [Tokenizer::Bytes, Tokenizer::Words, Tokenizer::Bpe(Box::new(bpe))] {
            assert_eq!(t.count(""), 0, "{}", t.name());
        }
    }

    #[test]
    fn reduction_examples() {
        let r = reduction("abcd", "ab", &Tokenizer::Bytes);
        assert_eq!((r.tokens_before, r.tokens_after, r.reduction_pct), (4, 2, 50.0));
        assert_eq!(reduction("int x;", "int x;", &Tokenizer::Words).reduction_pct, 0.0);
        assert_eq!(reduction("", "", &Tokenizer::Bytes).reduction_pct, 0.0);
        assert!(reduction("a", "ab", &Tokenizer::Bytes).reduction_pct < 0.0);
    }
}
