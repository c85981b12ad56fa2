//! Format stripping and restoration for Java, C++, C# and Python source.
//!
//! The crate removes the formatting elements that carry no meaning for a
//! compiler (indentation, interior whitespace and newlines) and can lay the
//! compact form back out as readable code. Every transform works on a
//! lossless token stream, so the significant tokens of the output always
//! equal those of the input.
//!
//! * [`lexkit`] scans source into tokens and decides which adjacent tokens
//!   need a separator.
//! * [`transform`] holds the strip and restore engines.
//! * [`partial`] handles truncated code by splitting off the unfinished tail
//!   and repairing bracket balance around the body.
//! * [`verify`] compares two texts for token-level equivalence.
//! * [`metering`] counts tokens and computes reduction statistics.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod lexkit;
pub mod metering;
pub mod partial;
pub mod transform;
pub mod verify;

pub use error::Error;
pub use lexkit::{lex, Language, LexToken, TokenKind};
pub use transform::{canonical_minimal, restore, strip, FormatConfig, StyleProfile, TransformResult};

/// Validates that `bytes` are UTF-8 and returns them as text.
pub fn decode(bytes: &[u8]) -> Result<&str, Error> {
    core::str::from_utf8(bytes).map_err(|e| Error::InvalidEncoding {
        offset: e.valid_up_to(),
    })
}
