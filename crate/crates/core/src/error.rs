use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("input is not valid UTF-8 (first bad byte at offset {offset})")]
    InvalidEncoding { offset: usize },

    #[error("unbalanced braces at line {line}, column {col}")]
    UnbalancedBraces { line: u32, col: u32 },

    #[error("repair ledger mismatch: expected `{expected}`, found `{found}`")]
    LedgerMismatch { expected: char, found: String },
}
