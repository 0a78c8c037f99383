//! Whole-stream encoder and decoder.
//!
//! In `Ppm` mode every byte goes through the context model. In `Vlppm` mode
//! a three-state machine decides when the dictionary model takes over:
//!
//! * `S0`: code a character. A letter starts a new prefix and moves to `S1`.
//! * `S1`: code a character. A letter extends the prefix, anything else
//!   returns to `S0`. A full-length prefix moves to `S2`.
//! * `S2`: the rest of the word is handled by the dictionary for the prefix.
//!
//! The encoder, knowing the whole suffix, codes a dictionary symbol (or an
//! escape followed by the suffix letters) in one go. The decoder reaches the
//! same decision right after the last prefix letter, and on escape or
//! missing dictionary stays in `S2` decoding letters until a non-letter
//! arrives. No switch signal is ever coded: both sides see the same prefix.

use alloc::vec::Vec;

use crate::coder::{Decoder, Encoder};
use crate::container::Container;
use crate::context::ContextModel;
use crate::dict::{DecodedSuffix, DictStore, SuffixOutcome};
use crate::error::{ConfigError, DecodeError};
use crate::trace::Trace;
use crate::{Symbol, EOF};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Mode {
    /// Plain character PPMC.
    Ppm = 0,
    /// PPMC plus prefix-keyed suffix dictionaries.
    Vlppm = 1,
}

impl TryFrom<u8> for Mode {
    type Error = ConfigError;

    fn try_from(value: u8) -> Result<Self, ConfigError> {
        match value {
            0 => Ok(Mode::Ppm),
            1 => Ok(Mode::Vlppm),
            other => Err(ConfigError::Mode(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodecConfig {
    pub mode: Mode,
    pub order: u8,
    /// Letters coded by the context model before a word's dictionary is consulted.
    pub prefix_len: u8,
}

impl Default for CodecConfig {
    fn default() -> Self {
        Self { mode: Mode::Vlppm, order: 3, prefix_len: 3 }
    }
}

impl CodecConfig {
    pub fn ppm(order: u8) -> Self {
        Self { mode: Mode::Ppm, order, ..Self::default() }
    }

    pub fn vlppm(order: u8) -> Self {
        Self { mode: Mode::Vlppm, order, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.order > crate::context::MAX_ORDER {
            return Err(ConfigError::Order(self.order));
        }
        if !(1..=crate::dict::MAX_PREFIX_LEN).contains(&self.prefix_len) {
            return Err(ConfigError::PrefixLen(self.prefix_len));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FsmState {
    S0,
    S1,
    S2,
}

/// ASCII letter test; `EOF` and every other byte are non-letters.
pub fn is_english(sym: Symbol) -> bool {
    matches!(sym, 0x41..=0x5A | 0x61..=0x7A)
}

/// The run of letters starting at `pos` (empty if there is none).
pub fn read_suffix(input: &[u8], pos: usize) -> &[u8] {
    let rest = input.get(pos..).unwrap_or_default();
    let len = rest.iter().take_while(|&&b| is_english(b.into())).count();
    &rest[..len]
}

pub fn compress(input: &[u8], config: &CodecConfig) -> Result<Container, ConfigError> {
    compress_traced(input, config, &mut ())
}

pub fn compress_traced<T: Trace + ?Sized>(
    input: &[u8],
    config: &CodecConfig,
    trace: &mut T,
) -> Result<Container, ConfigError> {
    config.validate()?;
    let mut ctx = ContextModel::new(config.order)?;
    let mut enc = Encoder::new();
    match config.mode {
        Mode::Ppm => {
            for &b in input {
                ctx.encode(b.into(), &mut enc, trace);
                trace.char_coded(b.into(), &ctx);
            }
        }
        Mode::Vlppm => {
            let mut store = DictStore::new(config.prefix_len)?;
            encode_vlppm(input, &mut ctx, &mut store, &mut enc, trace);
        }
    }
    ctx.encode(EOF, &mut enc, trace);
    trace.char_coded(EOF, &ctx);
    Ok(Container { config: *config, original_len: input.len() as u64, payload: enc.finish() })
}

fn encode_vlppm<T: Trace + ?Sized>(
    input: &[u8],
    ctx: &mut ContextModel,
    store: &mut DictStore,
    enc: &mut Encoder,
    trace: &mut T,
) {
    let prefix_len = usize::from(store.prefix_len());
    let mut prefix = Vec::with_capacity(prefix_len);
    let mut state = FsmState::S0;
    let mut pos = 0;
    while pos < input.len() {
        let c = input[pos];
        pos += 1;
        ctx.encode(c.into(), enc, trace);
        trace.char_coded(c.into(), ctx);
        let letter = is_english(c.into());
        match state {
            FsmState::S0 if letter => {
                prefix.clear();
                prefix.push(c);
                state = FsmState::S1;
            }
            FsmState::S0 => {}
            FsmState::S1 if letter => prefix.push(c),
            FsmState::S1 => state = FsmState::S0,
            FsmState::S2 => unreachable!("S2 is resolved within one step"),
        }
        if state == FsmState::S1 && prefix.len() == prefix_len {
            state = FsmState::S2;
        }
        if state == FsmState::S2 {
            let suffix = read_suffix(input, pos);
            let outcome = store.encode_suffix(&prefix, suffix, enc, trace);
            if outcome == SuffixOutcome::DictHit {
                for &b in suffix {
                    ctx.prime(b.into());
                }
                trace.suffix_coded(suffix, ctx);
            } else {
                if outcome == SuffixOutcome::DictEscape {
                    trace.dict_escape();
                }
                for &b in suffix {
                    ctx.encode(b.into(), enc, trace);
                    trace.char_coded(b.into(), ctx);
                }
            }
            pos += suffix.len();
            store.record_word(&prefix, suffix);
            trace.word_recorded(&prefix, suffix, outcome, store);
            state = FsmState::S0;
        }
    }
}

pub fn decompress(container: &Container) -> Result<Vec<u8>, DecodeError> {
    decompress_traced(container, &mut ())
}

pub fn decompress_traced<T: Trace + ?Sized>(container: &Container, trace: &mut T) -> Result<Vec<u8>, DecodeError> {
    let config = container.config;
    config.validate()?;
    let expected = container.original_len;
    let mut ctx = ContextModel::new(config.order)?;
    let mut dec = Decoder::new(&container.payload)?;
    // The header length is untrusted; grow on demand past a sane guess.
    let guess = expected.min(container.payload.len() as u64 * 16);
    let mut out = Vec::with_capacity(guess as usize);
    match config.mode {
        Mode::Ppm => loop {
            let sym = ctx.decode(&mut dec, trace)?;
            trace.char_coded(sym, &ctx);
            if sym == EOF {
                break;
            }
            out.push(sym as u8);
            check_len(&out, expected)?;
        },
        Mode::Vlppm => {
            let mut store = DictStore::new(config.prefix_len)?;
            decode_vlppm(&mut ctx, &mut store, &mut dec, &mut out, expected, trace)?;
        }
    }
    dec.finish()?;
    if out.len() as u64 != expected {
        return Err(DecodeError::LengthMismatch { expected, actual: out.len() as u64 });
    }
    Ok(out)
}

fn check_len(out: &[u8], expected: u64) -> Result<(), DecodeError> {
    if out.len() as u64 > expected {
        Err(DecodeError::LengthMismatch { expected, actual: out.len() as u64 })
    } else {
        Ok(())
    }
}

fn decode_vlppm<T: Trace + ?Sized>(
    ctx: &mut ContextModel,
    store: &mut DictStore,
    dec: &mut Decoder<'_>,
    out: &mut Vec<u8>,
    expected: u64,
    trace: &mut T,
) -> Result<(), DecodeError> {
    let prefix_len = usize::from(store.prefix_len());
    let mut prefix = Vec::with_capacity(prefix_len);
    let mut suffix = Vec::new();
    let mut outcome = SuffixOutcome::NoDict;
    let mut state = FsmState::S0;
    loop {
        let sym = ctx.decode(dec, trace)?;
        trace.char_coded(sym, ctx);
        let letter = is_english(sym);
        match state {
            FsmState::S0 if letter => {
                prefix.clear();
                prefix.push(sym as u8);
                state = FsmState::S1;
            }
            FsmState::S0 => {}
            FsmState::S1 if letter => prefix.push(sym as u8),
            FsmState::S1 => state = FsmState::S0,
            FsmState::S2 if letter => suffix.push(sym as u8),
            FsmState::S2 => {
                store.record_word(&prefix, &suffix);
                trace.word_recorded(&prefix, &suffix, outcome, store);
                state = FsmState::S0;
            }
        }
        if sym == EOF {
            return Ok(());
        }
        out.push(sym as u8);
        check_len(out, expected)?;
        if state == FsmState::S1 && prefix.len() == prefix_len {
            match store.decode_suffix(&prefix, dec, trace)? {
                DecodedSuffix::Suffix(word) => {
                    out.extend_from_slice(&word);
                    check_len(out, expected)?;
                    for &b in word.iter() {
                        ctx.prime(b.into());
                    }
                    trace.suffix_coded(&word, ctx);
                    store.record_word(&prefix, &word);
                    trace.word_recorded(&prefix, &word, SuffixOutcome::DictHit, store);
                    state = FsmState::S0;
                }
                DecodedSuffix::Escape => {
                    trace.dict_escape();
                    outcome = SuffixOutcome::DictEscape;
                    suffix.clear();
                    state = FsmState::S2;
                }
                DecodedSuffix::NoDict => {
                    outcome = SuffixOutcome::NoDict;
                    suffix.clear();
                    state = FsmState::S2;
                }
            }
        }
    }
}
