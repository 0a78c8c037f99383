//! Order-n PPMC character model.
//!
//! Every context of length `k <= n` that has been seen keeps its symbols in
//! first-seen order with adaptive counts. Escape method C gives the escape
//! a width equal to the number of distinct symbols. Coding walks from the
//! longest available context down to order 0 with full exclusion, then
//! falls back to a uniform order −1 over the 257-symbol alphabet (which is
//! the only place `EOF` can be coded). Updates follow update exclusion:
//! only the context that coded the symbol and the higher-order contexts
//! above it are incremented.

use alloc::vec::Vec;

use foldhash::fast::FixedState;
use hashbrown::HashMap;

use crate::coder::{Decoder, Encoder, FreqSlice, MAX_TOTAL};
use crate::digest;
use crate::error::{ConfigError, DecodeError};
use crate::trace::Trace;
use crate::{Symbol, ALPHABET_SIZE, EOF};

pub const MAX_ORDER: u8 = 8;

/// Symbols ruled out by higher-order contexts during one escape chain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExclusionSet {
    bits: [u64; 5],
    len: u32,
}

impl ExclusionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.bits[usize::from(sym >> 6)] & (1 << (sym & 63)) != 0
    }

    pub fn insert(&mut self, sym: Symbol) {
        let word = &mut self.bits[usize::from(sym >> 6)];
        let bit = 1 << (sym & 63);
        if *word & bit == 0 {
            *word |= bit;
            self.len += 1;
        }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn clear(&mut self) {
        *self = Self::default();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    sym: Symbol,
    count: u32,
}

/// Counts for one context, in first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolStats {
    entries: Vec<Entry>,
    total: u32,
}

/// Method-C coding distribution of one context after exclusions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distribution {
    /// Every symbol of the context is excluded: the escape is implied and
    /// costs nothing.
    AllExcluded,
    Slices {
        symbols: Vec<(Symbol, FreqSlice)>,
        escape: FreqSlice,
    },
}

enum Pick {
    Symbol(FreqSlice),
    Escape(FreqSlice),
    AllExcluded,
}

impl SymbolStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: &[(Symbol, u32)]) -> Self {
        let mut stats = Self::new();
        for &(sym, count) in counts {
            debug_assert!(count >= 1 && stats.count(sym).is_none());
            stats.entries.push(Entry { sym, count });
            stats.total += count;
        }
        stats
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn distinct(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, sym: Symbol) -> Option<u32> {
        self.entries.iter().find(|e| e.sym == sym).map(|e| e.count)
    }

    /// `(symbol, count)` pairs in first-seen order.
    pub fn counts(&self) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        self.entries.iter().map(|e| (e.sym, e.count))
    }

    pub fn distribution(&self, excl: &ExclusionSet) -> Distribution {
        let mut symbols = Vec::new();
        let mut cum = 0;
        for e in self.entries.iter().filter(|e| !excl.contains(e.sym)) {
            symbols.push((e.sym, cum, cum + e.count));
            cum += e.count;
        }
        if symbols.is_empty() {
            return Distribution::AllExcluded;
        }
        let total = cum + symbols.len() as u32;
        Distribution::Slices {
            escape: FreqSlice::from_parts(cum, total, total),
            symbols: symbols.into_iter().map(|(s, lo, hi)| (s, FreqSlice::from_parts(lo, hi, total))).collect(),
        }
    }

    /// Mass `m` and distinct count `q` of the symbols not excluded.
    fn masses(&self, excl: &ExclusionSet) -> (u32, u32) {
        if excl.is_empty() {
            return (self.total, self.distinct());
        }
        self.entries.iter().filter(|e| !excl.contains(e.sym)).fold((0, 0), |(m, q), e| (m + e.count, q + 1))
    }

    fn pick(&self, sym: Symbol, excl: &ExclusionSet) -> Pick {
        let (mut found, mut m, mut q) = (None, 0, 0);
        for e in self.entries.iter().filter(|e| !excl.contains(e.sym)) {
            if e.sym == sym {
                found = Some((m, m + e.count));
            }
            m += e.count;
            q += 1;
        }
        let total = m + q;
        match (found, q) {
            (_, 0) => Pick::AllExcluded,
            (Some((a, b)), _) => Pick::Symbol(FreqSlice::from_parts(a, b, total)),
            (None, _) => Pick::Escape(FreqSlice::from_parts(m, total, total)),
        }
    }

    /// Symbol whose slice contains `point`, given the non-excluded mass `m`.
    fn find(&self, point: u32, m: u32, excl: &ExclusionSet, total: u32) -> Option<(Symbol, FreqSlice)> {
        if point >= m {
            return None;
        }
        let mut cum = 0;
        for e in self.entries.iter().filter(|e| !excl.contains(e.sym)) {
            let hi = cum + e.count;
            if point < hi {
                return Some((e.sym, FreqSlice::from_parts(cum, hi, total)));
            }
            cum = hi;
        }
        unreachable!("point {point} below mass {m} must hit a symbol")
    }

    fn exclude_all(&self, excl: &mut ExclusionSet) {
        for e in &self.entries {
            excl.insert(e.sym);
        }
    }

    /// Increments `sym`, appending it if new, then halves all counts
    /// (floor 1) if `total + distinct` went over [`MAX_TOTAL`]. Returns
    /// whether the halving happened.
    fn increment(&mut self, sym: Symbol) -> bool {
        match self.entries.iter_mut().find(|e| e.sym == sym) {
            Some(e) => e.count += 1,
            None => self.entries.push(Entry { sym, count: 1 }),
        }
        self.total += 1;
        if self.total + self.distinct() > MAX_TOTAL {
            self.halve();
            true
        } else {
            false
        }
    }

    /// Halves every count, keeping each at least 1.
    pub fn halve(&mut self) {
        self.total = 0;
        for e in &mut self.entries {
            e.count = (e.count / 2).max(1);
            self.total += e.count;
        }
    }

    fn fingerprint(&self, pos: usize, ctx: u64) -> u64 {
        let e = self.entries[pos];
        digest::mix(ctx ^ digest::mix((pos as u64) << 48 | u64::from(e.sym) << 32 | u64::from(e.count)))
    }

    fn fingerprint_all(&self, ctx: u64) -> u64 {
        (0..self.entries.len()).fold(0u64, |acc, i| acc.wrapping_add(self.fingerprint(i, ctx)))
    }
}

type Table = HashMap<u64, SymbolStats, FixedState>;

/// Adaptive PPMC model for orders `n..=0` plus the order −1 fallback.
///
/// The model owns its history (the last `n` coded bytes), so encoder and
/// decoder only feed it symbols.
#[derive(Debug, Clone)]
pub struct ContextModel {
    order: u8,
    tables: Vec<Table>,
    history: u64,
    history_len: u8,
    digest: u64,
    entries: usize,
    excl: ExclusionSet,
}

impl ContextModel {
    pub fn new(order: u8) -> Result<Self, ConfigError> {
        if order > MAX_ORDER {
            return Err(ConfigError::Order(order));
        }
        Ok(Self {
            order,
            tables: (0..=order).map(|_| Table::with_hasher(FixedState::with_seed(0))).collect(),
            history: 0,
            history_len: 0,
            digest: 0,
            entries: 0,
            excl: ExclusionSet::new(),
        })
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    /// Total number of (context, symbol) entries across all orders.
    pub fn entry_count(&self) -> usize {
        self.entries
    }

    pub fn context_count(&self) -> usize {
        self.tables.iter().map(|t| t.len()).sum()
    }

    /// Stats of the context formed by the last `k` history bytes, if any.
    pub fn stats(&self, k: u8) -> Option<&SymbolStats> {
        if k > self.top() {
            return None;
        }
        self.tables[usize::from(k)].get(&self.key(k))
    }

    /// Stats for an explicit context string (most recent byte last).
    pub fn stats_for(&self, context: &[u8]) -> Option<&SymbolStats> {
        if context.len() > usize::from(self.order) {
            return None;
        }
        let key = context.iter().rev().enumerate().fold(0u64, |acc, (i, &b)| acc | u64::from(b) << (8 * i));
        self.tables[context.len()].get(&key)
    }

    /// 64-bit digest of counts, symbol order and history. Equal models give
    /// equal digests; the format is stable within a build only.
    pub fn state_hash(&self) -> u64 {
        digest::combine(&[self.digest, u64::from(self.order), self.history, u64::from(self.history_len)])
    }

    /// Highest usable order given the history seen so far.
    fn top(&self) -> u8 {
        self.order.min(self.history_len)
    }

    fn key(&self, k: u8) -> u64 {
        match k {
            0 => 0,
            8.. => self.history,
            _ => self.history & ((1u64 << (8 * k)) - 1),
        }
    }

    fn context_id(k: u8, key: u64) -> u64 {
        digest::mix(key ^ digest::mix(u64::from(k) + 1))
    }

    /// Codes `sym` and updates the model. Returns the order that coded it,
    /// `None` meaning order −1.
    pub fn encode<T: Trace + ?Sized>(&mut self, sym: Symbol, enc: &mut Encoder, trace: &mut T) -> Option<u8> {
        debug_assert!(u32::from(sym) < ALPHABET_SIZE);
        self.excl.clear();
        let mut coded = None;
        for k in (0..=self.top()).rev() {
            let Some(stats) = self.tables[usize::from(k)].get(&self.key(k)) else {
                continue;
            };
            match stats.pick(sym, &self.excl) {
                Pick::Symbol(slice) => {
                    enc.encode(slice);
                    trace.slice(slice);
                    coded = Some(k);
                    break;
                }
                Pick::Escape(slice) => {
                    enc.encode(slice);
                    trace.slice(slice);
                    stats.exclude_all(&mut self.excl);
                }
                Pick::AllExcluded => {}
            }
        }
        if coded.is_none() {
            let slice = self.uniform_slice(sym);
            enc.encode(slice);
            trace.slice(slice);
        }
        self.update(sym, coded);
        coded
    }

    pub fn decode<T: Trace + ?Sized>(&mut self, dec: &mut Decoder<'_>, trace: &mut T) -> Result<Symbol, DecodeError> {
        self.excl.clear();
        let mut coded = None;
        let mut sym = EOF;
        for k in (0..=self.top()).rev() {
            let Some(stats) = self.tables[usize::from(k)].get(&self.key(k)) else {
                continue;
            };
            let (m, q) = stats.masses(&self.excl);
            if q == 0 {
                continue;
            }
            let total = m + q;
            let point = dec.decode_point(total)?;
            match stats.find(point, m, &self.excl, total) {
                Some((s, slice)) => {
                    dec.consume(slice)?;
                    trace.slice(slice);
                    sym = s;
                    coded = Some(k);
                    break;
                }
                None => {
                    let slice = FreqSlice::from_parts(m, total, total);
                    dec.consume(slice)?;
                    trace.slice(slice);
                    stats.exclude_all(&mut self.excl);
                }
            }
        }
        if coded.is_none() {
            let total = ALPHABET_SIZE - self.excl.len();
            let point = dec.decode_point(total)?;
            sym = self.nth_allowed(point);
            let slice = FreqSlice::from_parts(point, point + 1, total);
            dec.consume(slice)?;
            trace.slice(slice);
        }
        self.update(sym, coded);
        Ok(sym)
    }

    /// Feeds `sym` into the model without coding it: counts and history
    /// change exactly as if it had been coded.
    pub fn prime(&mut self, sym: Symbol) {
        let coded = (0..=self.top())
            .rev()
            .find(|&k| self.tables[usize::from(k)].get(&self.key(k)).is_some_and(|s| s.count(sym).is_some()));
        self.update(sym, coded);
    }

    /// Update exclusion: increments `sym` in the coding context and every
    /// context above it, creating contexts and entries as needed, then
    /// shifts `sym` into the history. `EOF` leaves the model untouched.
    fn update(&mut self, sym: Symbol, coded: Option<u8>) {
        if sym == EOF {
            return;
        }
        for k in coded.unwrap_or(0)..=self.top() {
            let key = self.key(k);
            let id = Self::context_id(k, key);
            let stats = self.tables[usize::from(k)].entry(key).or_default();
            let pos = stats.entries.iter().position(|e| e.sym == sym);
            let will_halve = stats.total + 1 + stats.distinct() + u32::from(pos.is_none()) > MAX_TOTAL;
            let before = match (will_halve, pos) {
                (true, _) => stats.fingerprint_all(id),
                (false, Some(i)) => stats.fingerprint(i, id),
                (false, None) => 0,
            };
            let halved = stats.increment(sym);
            debug_assert_eq!(halved, will_halve);
            let after = match (will_halve, pos) {
                (true, _) => stats.fingerprint_all(id),
                (false, Some(i)) => stats.fingerprint(i, id),
                (false, None) => stats.fingerprint(stats.entries.len() - 1, id),
            };
            if pos.is_none() {
                self.entries += 1;
            }
            self.digest = self.digest.wrapping_sub(before).wrapping_add(after);
        }
        self.history = (self.history << 8) | u64::from(sym);
        self.history_len = (self.history_len + 1).min(MAX_ORDER);
    }

    fn uniform_slice(&self, sym: Symbol) -> FreqSlice {
        let total = ALPHABET_SIZE - self.excl.len();
        let rank = (0..sym).filter(|&s| !self.excl.contains(s)).count() as u32;
        FreqSlice::from_parts(rank, rank + 1, total)
    }

    fn nth_allowed(&self, n: u32) -> Symbol {
        (0..ALPHABET_SIZE as Symbol)
            .filter(|&s| !self.excl.contains(s))
            .nth(n as usize)
            .expect("point below order -1 total")
    }
}
