//! Lossless text compression with character-based PPMC and its
//! variable-length extension (VLPPM).
//!
//! VLPPM splits text into alternating words (runs of ASCII letters) and
//! non-words. Non-words and the first few letters of each word go through
//! an ordinary order-n PPMC context model. Once a word's prefix is known,
//! the rest of the word is predicted in one step from a dictionary of
//! suffixes previously seen after that prefix. Switching between the two
//! models is driven by a small state machine that the decoder can replay
//! without any side information.
//!
//! The crate is `no_std` (it needs `alloc`). File IO, the benchmark
//! harness and the command line live in the companion `vlppm` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod codec;
pub mod coder;
pub mod container;
pub mod context;
pub mod dict;
mod digest;
pub mod error;
pub mod trace;

pub use codec::{
    compress, compress_traced, decompress, decompress_traced, is_english, read_suffix, CodecConfig, FsmState, Mode,
};
pub use coder::{Decoder, Encoder, FreqSlice, MAX_TOTAL};
pub use container::Container;
pub use context::{ContextModel, Distribution, ExclusionSet, SymbolStats};
pub use dict::{DecodedSuffix, DictStore, Dictionary, Lookup, SuffixDistribution, SuffixOutcome};
pub use error::{ConfigError, DecodeError, SliceError};
pub use trace::Trace;

/// A coded symbol: byte values `0..=255` plus [`EOF`].
pub type Symbol = u16;

/// End-of-stream marker. Only ever coded by the order −1 model.
pub const EOF: Symbol = 256;

/// Number of symbols in the order −1 alphabet.
pub const ALPHABET_SIZE: u32 = 257;
