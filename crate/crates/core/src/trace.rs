//! Observation hooks for instrumented runs.
//!
//! Encoder and decoder report every coded slice and every unit of text the
//! slices belong to. A unit event closes the slices reported since the
//! previous unit event, which lets a caller attribute bits to characters
//! and words. Model references are handed over so that a tracer can take
//! `state_hash` snapshots; untraced runs pay nothing for them.

use crate::coder::FreqSlice;
use crate::context::ContextModel;
use crate::dict::{DictStore, SuffixOutcome};
use crate::Symbol;

#[allow(unused_variables)]
pub trait Trace {
    fn slice(&mut self, slice: FreqSlice) {}

    /// A character went through the context model (including `EOF`).
    fn char_coded(&mut self, sym: Symbol, model: &ContextModel) {}

    /// A dictionary escape was coded; the suffix follows as characters.
    fn dict_escape(&mut self) {}

    /// A whole suffix was conveyed by one dictionary symbol and primed into
    /// the context model.
    fn suffix_coded(&mut self, suffix: &[u8], model: &ContextModel) {}

    /// A word of at least prefix length finished and was recorded.
    fn word_recorded(&mut self, prefix: &[u8], suffix: &[u8], outcome: SuffixOutcome, store: &DictStore) {}
}

impl Trace for () {}
