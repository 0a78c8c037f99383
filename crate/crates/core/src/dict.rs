//! Prefix-keyed suffix dictionaries.
//!
//! A dictionary holds the suffixes seen after one fixed-length word prefix
//! together with their counts. Coding a suffix uses one slot per entry plus
//! an escape slot of width 1:
//!
//! ```text
//! P(escape) = 1 / (1 + sum C_j)      P(W_i) = C_i / (1 + sum C_j)
//! ```
//!
//! The escape occupies `[0, 1)` and entries follow in first-seen order.
//!
//! A prefix that turns up as a complete word on its own is blacklisted:
//! its dictionary is dropped and it is never given one again, so such
//! words stop paying for an escape every time they occur.

use alloc::boxed::Box;
use alloc::vec::Vec;

use foldhash::fast::FixedState;
use hashbrown::{HashMap, HashSet};

use crate::coder::{Decoder, Encoder, FreqSlice, MAX_TOTAL};
use crate::digest;
use crate::error::{ConfigError, DecodeError};
use crate::trace::Trace;

pub const MAX_PREFIX_LEN: u8 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
struct SuffixEntry {
    suffix: Box<[u8]>,
    count: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    entries: Vec<SuffixEntry>,
    /// Sum of entry counts, without the escape slot.
    mass: u32,
}

/// Slices for every dictionary outcome under one shared total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixDistribution {
    pub escape: FreqSlice,
    pub entries: Vec<FreqSlice>,
}

impl Dictionary {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coding total: the entry counts plus one for the escape.
    pub fn total(&self) -> u32 {
        1 + self.mass
    }

    pub fn count(&self, suffix: &[u8]) -> Option<u32> {
        self.entries.iter().find(|e| &*e.suffix == suffix).map(|e| e.count)
    }

    /// `(suffix, count)` in first-seen order.
    pub fn entries(&self) -> impl Iterator<Item = (&[u8], u32)> + '_ {
        self.entries.iter().map(|e| (&*e.suffix, e.count))
    }

    pub fn suffix_distribution(&self) -> SuffixDistribution {
        let total = self.total();
        let mut cum = 1;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let s = FreqSlice::from_parts(cum, cum + e.count, total);
                cum += e.count;
                s
            })
            .collect();
        SuffixDistribution { escape: FreqSlice::from_parts(0, 1, total), entries }
    }

    /// Slice of `suffix`, or the escape slice when it is not an entry.
    fn slice_of(&self, suffix: &[u8]) -> Result<FreqSlice, FreqSlice> {
        let total = self.total();
        let mut cum = 1;
        for e in &self.entries {
            if &*e.suffix == suffix {
                return Ok(FreqSlice::from_parts(cum, cum + e.count, total));
            }
            cum += e.count;
        }
        Err(FreqSlice::from_parts(0, 1, total))
    }

    fn entry_at(&self, point: u32) -> Option<(usize, FreqSlice)> {
        if point == 0 {
            return None;
        }
        let total = self.total();
        let mut cum = 1;
        for (i, e) in self.entries.iter().enumerate() {
            if point < cum + e.count {
                return Some((i, FreqSlice::from_parts(cum, cum + e.count, total)));
            }
            cum += e.count;
        }
        unreachable!("point {point} inside total {total}")
    }

    /// Bumps `suffix`, inserting it with count 1 if new, and halves all
    /// counts (floor 1) if the coding total went over [`MAX_TOTAL`].
    /// Returns the touched position, or `None` after a halving.
    fn record(&mut self, suffix: &[u8]) -> Option<usize> {
        let pos = match self.entries.iter().position(|e| &*e.suffix == suffix) {
            Some(i) => {
                self.entries[i].count += 1;
                i
            }
            None => {
                self.entries.push(SuffixEntry { suffix: suffix.into(), count: 1 });
                self.entries.len() - 1
            }
        };
        self.mass += 1;
        if self.total() > MAX_TOTAL {
            self.mass = 0;
            for e in &mut self.entries {
                e.count = (e.count / 2).max(1);
                self.mass += e.count;
            }
            return None;
        }
        Some(pos)
    }

    fn entry_fingerprint(&self, i: usize, prefix: u64) -> u64 {
        let e = &self.entries[i];
        digest::mix(prefix ^ digest::bytes(&e.suffix) ^ digest::mix((i as u64) << 32 | u64::from(e.count)))
    }

    fn fingerprint(&self, prefix: u64) -> u64 {
        (0..self.entries.len()).fold(0u64, |acc, i| acc.wrapping_add(self.entry_fingerprint(i, prefix)))
    }

    fn would_halve(&self) -> bool {
        self.total() + 1 > MAX_TOTAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup<'a> {
    Found(&'a Dictionary),
    Absent,
    Blacklisted,
}

/// What the dictionary step did for one word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuffixOutcome {
    /// The suffix was coded as one dictionary symbol.
    DictHit,
    /// An escape was coded; the suffix follows through the context model.
    DictEscape,
    /// No dictionary applies; nothing was coded.
    NoDict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodedSuffix {
    Suffix(Box<[u8]>),
    Escape,
    NoDict,
}

type PrefixKey = u64;

/// All dictionaries of one stream plus the blacklist.
#[derive(Debug, Clone)]
pub struct DictStore {
    prefix_len: u8,
    dicts: HashMap<PrefixKey, Dictionary, FixedState>,
    blacklist: HashSet<PrefixKey, FixedState>,
    digest: u64,
    entries: usize,
}

impl DictStore {
    pub fn new(prefix_len: u8) -> Result<Self, ConfigError> {
        if !(1..=MAX_PREFIX_LEN).contains(&prefix_len) {
            return Err(ConfigError::PrefixLen(prefix_len));
        }
        Ok(Self {
            prefix_len,
            dicts: HashMap::with_hasher(FixedState::with_seed(0)),
            blacklist: HashSet::with_hasher(FixedState::with_seed(0)),
            digest: 0,
            entries: 0,
        })
    }

    pub fn prefix_len(&self) -> u8 {
        self.prefix_len
    }

    fn key(&self, prefix: &[u8]) -> PrefixKey {
        assert_eq!(prefix.len(), usize::from(self.prefix_len), "prefix length");
        prefix.iter().fold(0, |acc, &b| acc << 8 | u64::from(b))
    }

    pub fn lookup(&self, prefix: &[u8]) -> Lookup<'_> {
        let key = self.key(prefix);
        if self.blacklist.contains(&key) {
            Lookup::Blacklisted
        } else {
            self.dicts.get(&key).map_or(Lookup::Absent, Lookup::Found)
        }
    }

    pub fn is_blacklisted(&self, prefix: &[u8]) -> bool {
        self.blacklist.contains(&self.key(prefix))
    }

    pub fn dictionary_count(&self) -> usize {
        self.dicts.len()
    }

    pub fn blacklist_len(&self) -> usize {
        self.blacklist.len()
    }

    /// Total suffix entries over all dictionaries.
    pub fn entry_count(&self) -> usize {
        self.entries
    }

    pub fn state_hash(&self) -> u64 {
        digest::combine(&[self.digest, u64::from(self.prefix_len)])
    }

    pub fn encode_suffix<T: Trace + ?Sized>(
        &self,
        prefix: &[u8],
        suffix: &[u8],
        enc: &mut Encoder,
        trace: &mut T,
    ) -> SuffixOutcome {
        let Lookup::Found(dict) = self.lookup(prefix) else {
            return SuffixOutcome::NoDict;
        };
        match dict.slice_of(suffix) {
            Ok(slice) => {
                enc.encode(slice);
                trace.slice(slice);
                SuffixOutcome::DictHit
            }
            Err(escape) => {
                enc.encode(escape);
                trace.slice(escape);
                SuffixOutcome::DictEscape
            }
        }
    }

    pub fn decode_suffix<T: Trace + ?Sized>(
        &self,
        prefix: &[u8],
        dec: &mut Decoder<'_>,
        trace: &mut T,
    ) -> Result<DecodedSuffix, DecodeError> {
        let Lookup::Found(dict) = self.lookup(prefix) else {
            return Ok(DecodedSuffix::NoDict);
        };
        let point = dec.decode_point(dict.total())?;
        match dict.entry_at(point) {
            Some((i, slice)) => {
                dec.consume(slice)?;
                trace.slice(slice);
                Ok(DecodedSuffix::Suffix(dict.entries[i].suffix.clone()))
            }
            None => {
                let escape = FreqSlice::from_parts(0, 1, dict.total());
                dec.consume(escape)?;
                trace.slice(escape);
                Ok(DecodedSuffix::Escape)
            }
        }
    }

    /// Learns a completed word `prefix + suffix`.
    ///
    /// An empty suffix means the prefix is itself a word: any dictionary for
    /// it is dropped and the prefix is blacklisted for good. Otherwise the
    /// suffix count is bumped unless the prefix is blacklisted.
    pub fn record_word(&mut self, prefix: &[u8], suffix: &[u8]) {
        let key = self.key(prefix);
        let id = digest::mix(key ^ 0x5eed);
        if suffix.is_empty() {
            if let Some(dict) = self.dicts.remove(&key) {
                self.digest = self.digest.wrapping_sub(dict.fingerprint(id));
                self.entries -= dict.len();
            }
            if self.blacklist.insert(key) {
                self.digest = self.digest.wrapping_add(digest::mix(id ^ 0xb1ac));
            }
            return;
        }
        if self.blacklist.contains(&key) {
            return;
        }
        let dict = self.dicts.entry(key).or_default();
        let len = dict.len();
        let pos = dict.entries.iter().position(|e| &*e.suffix == suffix);
        let before = match (dict.would_halve(), pos) {
            (true, _) => dict.fingerprint(id),
            (false, Some(i)) => dict.entry_fingerprint(i, id),
            (false, None) => 0,
        };
        let after = match dict.record(suffix) {
            Some(i) => dict.entry_fingerprint(i, id),
            None => dict.fingerprint(id),
        };
        self.entries += dict.len() - len;
        self.digest = self.digest.wrapping_sub(before).wrapping_add(after);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;
    use std::vec::Vec;

    fn store_with(words: &[(&str, &str)]) -> DictStore {
        let mut store = DictStore::new(3).unwrap();
        for (p, s) in words {
            store.record_word(p.as_bytes(), s.as_bytes());
        }
        store
    }

    fn found<'a>(store: &'a DictStore, p: &str) -> &'a Dictionary {
        match store.lookup(p.as_bytes()) {
            Lookup::Found(d) => d,
            other => panic!("{p}: {other:?}"),
        }
    }

    #[derive(Default)]
    struct Slices(Vec<FreqSlice>);

    impl Trace for Slices {
        fn slice(&mut self, s: FreqSlice) {
            self.0.push(s);
        }
    }

    #[test]
    fn escape_and_suffix_probabilities() {
        let store = store_with(&[
            ("inf", "ormation"),
            ("inf", "ormation"),
            ("inf", "ormation"),
            ("inf", "o"),
            ("inf", "o"),
            ("inf", "er"),
            ("inf", "er"),
        ]);
        let dist = found(&store, "inf").suffix_distribution();
        assert_eq!((dist.escape.width(), dist.escape.total()), (1, 8));
        assert_eq!((dist.entries[0].width(), dist.entries[0].total()), (3, 8));

        let single = store_with(&[("inf", "ormation")]);
        let dist = found(&single, "inf").suffix_distribution();
        assert_eq!((dist.escape.width(), dist.escape.total()), (1, 2));
        assert_eq!((dist.entries[0].width(), dist.entries[0].total()), (1, 2));
    }

    #[test]
    fn eight_suffixes_share_with_escape() {
        let suffixes = ["ant", "ection", "er", "inite", "lation", "o", "ormation", "rared"];
        let words: Vec<_> = suffixes.iter().map(|s| ("inf", *s)).collect();
        let store = store_with(&words);
        let dist = found(&store, "inf").suffix_distribution();
        assert_eq!(dist.escape.total(), 9);
        assert!(dist.entries.iter().all(|s| s.width() == 1 && s.total() == 9));
    }

    #[test]
    fn lookup_states() {
        let mut store = DictStore::new(3).unwrap();
        assert_eq!(store.lookup(b"inf"), Lookup::Absent);
        store.record_word(b"inf", b"ormation");
        assert_eq!(found(&store, "inf").len(), 1);
        store.record_word(b"let", b"");
        assert_eq!(store.lookup(b"let"), Lookup::Blacklisted);
    }

    #[test]
    fn encode_outcomes_and_slices() {
        let store = store_with(&[("inf", "ormation")]);
        let mut enc = Encoder::new();
        let mut t = Slices::default();
        assert_eq!(store.encode_suffix(b"inf", b"ormation", &mut enc, &mut t), SuffixOutcome::DictHit);
        assert_eq!(store.encode_suffix(b"inf", b"ormal", &mut enc, &mut t), SuffixOutcome::DictEscape);
        assert_eq!(store.encode_suffix(b"inf", b"", &mut enc, &mut t), SuffixOutcome::DictEscape);
        assert_eq!(store.encode_suffix(b"abc", b"de", &mut enc, &mut t), SuffixOutcome::NoDict);
        let expect =
            vec![FreqSlice::new(1, 2, 2).unwrap(), FreqSlice::new(0, 1, 2).unwrap(), FreqSlice::new(0, 1, 2).unwrap()];
        assert_eq!(t.0, expect);

        let black = store_with(&[("let", "tuce"), ("let", "")]);
        let mut t = Slices::default();
        let mut enc = Encoder::new();
        assert_eq!(black.encode_suffix(b"let", b"tuce", &mut enc, &mut t), SuffixOutcome::NoDict);
        assert!(t.0.is_empty());
    }

    #[test]
    fn decode_mirrors_encode() {
        let store = store_with(&[("inf", "ormation"), ("inf", "er"), ("let", "")]);
        let mut enc = Encoder::new();
        store.encode_suffix(b"inf", b"er", &mut enc, &mut ());
        store.encode_suffix(b"inf", b"ormal", &mut enc, &mut ());
        store.encode_suffix(b"let", b"tuce", &mut enc, &mut ());
        let payload = enc.finish();
        let mut dec = Decoder::new(&payload).unwrap();
        assert_eq!(store.decode_suffix(b"inf", &mut dec, &mut ()).unwrap(), DecodedSuffix::Suffix((*b"er").into()));
        assert_eq!(store.decode_suffix(b"inf", &mut dec, &mut ()).unwrap(), DecodedSuffix::Escape);
        assert_eq!(store.decode_suffix(b"let", &mut dec, &mut ()).unwrap(), DecodedSuffix::NoDict);
        dec.finish().unwrap();
    }

    #[test]
    fn record_word_rules() {
        let mut store = store_with(&[("inf", "ormation"), ("inf", "ormation")]);
        assert_eq!(found(&store, "inf").count(b"ormation"), Some(2));

        store.record_word(b"let", b"tuce");
        assert_eq!(found(&store, "let").len(), 1);
        let entries = store.entry_count();
        store.record_word(b"let", b"");
        assert_eq!(store.lookup(b"let"), Lookup::Blacklisted);
        assert_eq!(store.entry_count(), entries - 1);
        assert_eq!(store.dictionary_count(), 1);

        let hash = store.state_hash();
        store.record_word(b"let", b"tuce");
        assert_eq!(store.lookup(b"let"), Lookup::Blacklisted);
        assert_eq!(store.state_hash(), hash);
    }

    #[test]
    fn blacklist_without_prior_dictionary() {
        let mut store = DictStore::new(3).unwrap();
        store.record_word(b"aaa", b"");
        assert!(store.is_blacklisted(b"aaa"));
        assert_eq!(store.blacklist_len(), 1);
    }

    #[test]
    fn total_stays_under_max() {
        let mut store = DictStore::new(3).unwrap();
        for i in 0..70_000u32 {
            store.record_word(b"the", if i % 7 == 0 { b"re" } else { b"se" });
        }
        let d = found(&store, "the");
        assert!(d.total() <= MAX_TOTAL);
        assert_eq!(d.total(), 1 + d.entries().map(|(_, c)| c).sum::<u32>());
    }

    #[test]
    fn hash_tracks_content_not_history() {
        let a = store_with(&[("inf", "o"), ("abc", "de"), ("inf", "o")]);
        let b = store_with(&[("abc", "de"), ("inf", "o"), ("inf", "o")]);
        let c = store_with(&[("inf", "o"), ("abc", "de")]);
        assert_eq!(a.state_hash(), b.state_hash());
        assert_ne!(a.state_hash(), c.state_hash());
    }

    #[test]
    fn rejects_bad_prefix_len() {
        assert_eq!(DictStore::new(0).unwrap_err(), ConfigError::PrefixLen(0));
        assert_eq!(DictStore::new(9).unwrap_err(), ConfigError::PrefixLen(9));
    }
}
