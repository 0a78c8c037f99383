//! Files, corpora and reports on top of [`vlppm_core`].
//!
//! The core crate turns bytes into containers and back. This crate adds
//! what needs an operating system: reading corpora, verifying them against
//! a manifest, timing both codecs, attributing bits to words, writing
//! reports atomically and the `vlppm` command line.

pub mod bench;
pub mod error;
pub mod fsio;
pub mod manifest;
pub mod profile;
pub mod report;

pub use vlppm_core;

pub use bench::{gain, run_corpus, BenchConfig, CorpusReport, FileResult, ModeResult, OrderSummary};
pub use error::Error;
pub use profile::{pearson, word_length_profile, WordLenStats};
pub use report::{emit_report, Format};
