//! Command-line tool, corpus measurement and LLM gateway built on
//! `unfmt-core`.

pub mod cli;
pub mod corpus;
pub mod gateway;
pub mod style;
pub mod tokenizer_files;

pub use cli::run;
