//! Byte-level byte-pair encoding.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BpeError {
    #[error("malformed vocabulary: {0}")]
    MalformedVocab(String),
    #[error("malformed merges at line {line}: {reason}")]
    MalformedMerges { line: usize, reason: String },
}

/// The printable stand-in for each byte used by byte-level vocabularies.
fn byte_chars() -> [char; 256] {
    let mut table = ['\0'; 256];
    let mut extra = 0u32;
    for b in 0..=255u8 {
        let printable = matches!(b, b'!'..=b'~' | 0xA1..=0xAC | 0xAE..=0xFF);
        table[b as usize] = if printable {
            char::from(b)
        } else {
            let c = char::from_u32(256 + extra).unwrap();
            extra += 1;
            c
        };
    }
    table
}

/// Splits text into pieces: an optional whitespace run followed by a run of
/// letters, a run of digits or one other character. Whitespace at the end is
/// a piece of its own.
pub(crate) fn pre_split(text: &str) -> Vec<&str> {
    let mut pieces = Vec::new();
    let mut iter = text.char_indices().peekable();
    while let Some(&(start, _)) = iter.peek() {
        while iter.peek().is_some_and(|&(_, c)| c.is_whitespace()) {
            iter.next();
        }
        let Some((_, c)) = iter.next() else {
            pieces.push(&text[start..]);
            break;
        };
        if c.is_alphabetic() {
            while iter.peek().is_some_and(|&(_, n)| n.is_alphabetic()) {
                iter.next();
            }
        } else if c.is_numeric() {
            while iter.peek().is_some_and(|&(_, n)| n.is_numeric()) {
                iter.next();
            }
        }
        let end = iter.peek().map_or(text.len(), |&(i, _)| i);
        pieces.push(&text[start..end]);
    }
    pieces
}

/// A merge table over byte-level symbols.
#[derive(Debug, Clone)]
pub struct Bpe {
    byte_symbol: [u32; 256],
    /// (left, right) -> (rank, merged symbol)
    merges: BTreeMap<(u32, u32), (u32, u32)>,
    symbols: Vec<String>,
    vocab_size: usize,
}

impl Bpe {
    /// `vocab` maps token strings to ids `0..n`; `merges` are in rank order
    /// and may only use vocabulary symbols.
    pub fn new(vocab: Vec<(String, u32)>, merges: Vec<(String, String)>) -> Result<Bpe, BpeError> {
        let mut seen_ids = alloc::vec![false; vocab.len()];
        let mut known: BTreeMap<&str, u32> = BTreeMap::new();
        for (token, id) in &vocab {
            if known.insert(token, *id).is_some() {
                return Err(BpeError::MalformedVocab(alloc::format!("duplicate entry {token:?}")));
            }
            match seen_ids.get_mut(*id as usize) {
                Some(slot) if !*slot => *slot = true,
                Some(_) => return Err(BpeError::MalformedVocab(alloc::format!("duplicate id {id}"))),
                None => {
                    return Err(BpeError::MalformedVocab(alloc::format!(
                        "id {id} outside 0..{}",
                        vocab.len()
                    )))
                }
            }
        }

        let mut interned: BTreeMap<String, u32> = BTreeMap::new();
        let mut symbols: Vec<String> = Vec::new();
        let mut intern = |s: &str, symbols: &mut Vec<String>| -> u32 {
            if let Some(&id) = interned.get(s) {
                return id;
            }
            let id = symbols.len() as u32;
            symbols.push(String::from(s));
            interned.insert(String::from(s), id);
            id
        };
        let chars = byte_chars();
        let mut byte_symbol = [0u32; 256];
        let mut buf = [0u8; 4];
        for (b, c) in chars.iter().enumerate() {
            byte_symbol[b] = intern(c.encode_utf8(&mut buf), &mut symbols);
        }

        let mut table = BTreeMap::new();
        for (rank, (left, right)) in merges.iter().enumerate() {
            for side in [left, right] {
                if !known.contains_key(side.as_str()) {
                    return Err(BpeError::MalformedMerges {
                        line: rank + 1,
                        reason: alloc::format!("unknown symbol {side:?}"),
                    });
                }
            }
            let a = intern(left, &mut symbols);
            let b = intern(right, &mut symbols);
            let mut joined = left.clone();
            joined.push_str(right);
            let merged = intern(&joined, &mut symbols);
            table.entry((a, b)).or_insert((rank as u32, merged));
        }
        Ok(Bpe { byte_symbol, merges: table, symbols, vocab_size: vocab.len() })
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn merge_count(&self) -> usize {
        self.merges.len()
    }

    fn encode_piece(&self, piece: &str, out: &mut Vec<u32>) {
        let start = out.len();
        out.extend(piece.bytes().map(|b| self.byte_symbol[b as usize]));
        loop {
            let syms = &out[start..];
            let best = syms
                .windows(2)
                .filter_map(|w| self.merges.get(&(w[0], w[1])).map(|&(rank, merged)| (rank, w[0], w[1], merged)))
                .min_by_key(|&(rank, ..)| rank);
            let Some((_, a, b, merged)) = best else { break };
            let mut read = start;
            let mut write = start;
            while read < out.len() {
                if read + 1 < out.len() && out[read] == a && out[read + 1] == b {
                    out[write] = merged;
                    read += 2;
                } else {
                    out[write] = out[read];
                    read += 1;
                }
                write += 1;
            }
            out.truncate(write);
        }
    }

    fn encode(&self, text: &str) -> Vec<u32> {
        let mut out = Vec::with_capacity(text.len());
        for piece in pre_split(text) {
            self.encode_piece(piece, &mut out);
        }
        out
    }

    /// The symbols `text` is split into, in byte-level spelling.
    pub fn segments(&self, text: &str) -> Vec<&str> {
        self.encode(text).into_iter().map(|id| self.symbols[id as usize].as_str()).collect()
    }

    pub fn count(&self, text: &str) -> usize {
        pre_split(text)
            .into_iter()
            .map(|piece| {
                let mut buf = Vec::with_capacity(piece.len());
                self.encode_piece(piece, &mut buf);
                buf.len()
            })
            .sum()
    }
}

/// Parses a merges file: one pair per line, `#` lines and blank lines
/// ignored.
pub fn parse_merges(text: &str) -> Result<Vec<(String, String)>, BpeError> {
    let mut merges = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(' ').filter(|p| !p.is_empty());
        match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => merges.push((String::from(a), String::from(b))),
            _ => {
                return Err(BpeError::MalformedMerges {
                    line: n + 1,
                    reason: String::from("expected two symbols"),
                })
            }
        }
    }
    Ok(merges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn vocab(tokens: &[&str]) -> Vec<(String, u32)> {
        tokens.iter().enumerate().map(|(i, t)| (String::from(*t), i as u32)).collect()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (String::from(a), String::from(b))
    }

    #[test]
    fn single_merge() {
        let bpe = Bpe::new(vocab(&["a", "b", "ab"]), vec![pair("a", "b")]).unwrap();
        assert_eq!(bpe.count("abab"), 2);
        assert_eq!(bpe.segments("abab"), ["ab", "ab"]);
        assert_eq!(bpe.count(""), 0);
    }

    #[test]
    fn rank_order_decides() {
        let v = vocab(&["a", "b", "c", "ab", "bc"]);
        let bc_first = Bpe::new(v.clone(), vec![pair("b", "c"), pair("a", "b")]).unwrap();
        assert_eq!(bc_first.segments("abc"), ["a", "bc"]);
        let ab_first = Bpe::new(v, vec![pair("a", "b"), pair("b", "c")]).unwrap();
        assert_eq!(ab_first.segments("abc"), ["ab", "c"]);
    }

    #[test]
    fn chained_merges() {
        let bpe = Bpe::new(vocab(&["a", "b", "ab", "abab"]), vec![pair("a", "b"), pair("ab", "ab")]).unwrap();
        assert_eq!(bpe.segments("ababab"), ["abab", "ab"]);
    }

    #[test]
    fn spaces_use_byte_level_spelling() {
        let bpe = Bpe::new(vocab(&["\u{120}", "x", "\u{120}x"]), vec![pair("\u{120}", "x")]).unwrap();
        assert_eq!(bpe.segments("a x"), ["a", "\u{120}x"]);
        assert_eq!(bpe.count("a x"), 2);
    }

    #[test]
    fn pre_split_pieces() {
        assert_eq!(pre_split("int  x=10;\n"), ["int", "  x", "=", "10", ";", "\n"]);
        assert_eq!(pre_split(""), Vec::<&str>::new());
        assert_eq!(pre_split("  "), ["  "]);
        assert_eq!(pre_split("ab12"), ["ab", "12"]);
    }

    #[test]
    fn byte_table_is_a_bijection() {
        let chars = byte_chars();
        let mut sorted = chars.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 256);
        assert_eq!(chars[b' ' as usize], '\u{120}');
        assert_eq!(chars[b'\n' as usize], '\u{10A}');
        assert_eq!(chars[b'A' as usize], 'A');
    }

    #[test]
    fn vocab_errors() {
        assert!(matches!(
            Bpe::new(vec![(String::from("a"), 0), (String::from("a"), 1)], vec![]),
            Err(BpeError::MalformedVocab(_))
        ));
        assert!(matches!(
            Bpe::new(vec![(String::from("a"), 0), (String::from("b"), 0)], vec![]),
            Err(BpeError::MalformedVocab(_))
        ));
        assert!(matches!(Bpe::new(vec![(String::from("a"), 2)], vec![]), Err(BpeError::MalformedVocab(_))));
    }

    #[test]
    fn merges_need_known_symbols() {
        let err = Bpe::new(vocab(&["a"]), vec![pair("a", "z")]).unwrap_err();
        assert!(matches!(err, BpeError::MalformedMerges { line: 1, .. }));
    }

    #[test]
    fn merges_file_parsing() {
        let m = parse_merges("#version: 0.2\na b\n\nab c\n").unwrap();
        assert_eq!(m, [pair("a", "b"), pair("ab", "c")]);
        assert!(matches!(parse_merges("a\n"), Err(BpeError::MalformedMerges { line: 1, .. })));
        assert!(matches!(parse_merges("a b c\n"), Err(BpeError::MalformedMerges { line: 1, .. })));
    }
}
