//! Straightforward reference models used to cross-check the real ones.
//!
//! Written for clarity rather than speed: contexts are keyed by their byte
//! strings, sets are ordered sets, and every total is recomputed from
//! scratch.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use vlppm_core::{Encoder, FreqSlice};

pub const MAX_TOTAL: u32 = 1 << 16;
pub const EOF: u16 = 256;

pub type Slice = (u32, u32, u32);

pub struct NaivePpm {
    order: usize,
    history: Vec<u8>,
    contexts: BTreeMap<Vec<u8>, Vec<(u16, u32)>>,
}

impl NaivePpm {
    pub fn new(order: usize) -> Self {
        Self { order, history: Vec::new(), contexts: BTreeMap::new() }
    }

    fn context(&self, k: usize) -> &[u8] {
        &self.history[self.history.len() - k..]
    }

    fn top(&self) -> usize {
        self.order.min(self.history.len())
    }

    pub fn code(&mut self, sym: u16, out: &mut Vec<Slice>) {
        let mut excluded = BTreeSet::new();
        let mut coded = None;
        for k in (0..=self.top()).rev() {
            let Some(list) = self.contexts.get(self.context(k)) else { continue };
            let live: Vec<_> = list.iter().filter(|(s, _)| !excluded.contains(s)).collect();
            if live.is_empty() {
                continue;
            }
            let m: u32 = live.iter().map(|(_, c)| c).sum();
            let total = m + live.len() as u32;
            let mut cum = 0;
            let mut hit = None;
            for &&(s, c) in &live {
                if s == sym {
                    hit = Some((cum, cum + c, total));
                }
                cum += c;
            }
            match hit {
                Some(slice) => {
                    out.push(slice);
                    coded = Some(k);
                    break;
                }
                None => {
                    out.push((m, total, total));
                    excluded.extend(list.iter().map(|&(s, _)| s));
                }
            }
        }
        if coded.is_none() {
            let allowed: Vec<u16> = (0..=EOF).filter(|s| !excluded.contains(s)).collect();
            let rank = allowed.iter().position(|&s| s == sym).unwrap() as u32;
            out.push((rank, rank + 1, allowed.len() as u32));
        }
        self.update(sym, coded);
    }

    pub fn prime(&mut self, sym: u16) {
        let coded = (0..=self.top())
            .rev()
            .find(|&k| self.contexts.get(self.context(k)).is_some_and(|l| l.iter().any(|&(s, _)| s == sym)));
        self.update(sym, coded);
    }

    fn update(&mut self, sym: u16, coded: Option<usize>) {
        if sym == EOF {
            return;
        }
        for k in coded.unwrap_or(0)..=self.top() {
            let key = self.context(k).to_vec();
            let list = self.contexts.entry(key).or_default();
            match list.iter_mut().find(|(s, _)| *s == sym) {
                Some((_, c)) => *c += 1,
                None => list.push((sym, 1)),
            }
            let total: u32 = list.iter().map(|(_, c)| c).sum();
            if total + list.len() as u32 > MAX_TOTAL {
                for (_, c) in list.iter_mut() {
                    *c = (*c / 2).max(1);
                }
            }
        }
        self.history.push(sym as u8);
    }

    pub fn entry(&self, context: &[u8], sym: u16) -> Option<u32> {
        self.contexts.get(context)?.iter().find(|&&(s, _)| s == sym).map(|&(_, c)| c)
    }
}

#[derive(Default)]
pub struct NaiveDicts {
    dicts: BTreeMap<Vec<u8>, Vec<(Vec<u8>, u32)>>,
    blacklist: BTreeSet<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Hit,
    Escape,
    NoDict,
}

impl NaiveDicts {
    pub fn code(&self, prefix: &[u8], suffix: &[u8], out: &mut Vec<Slice>) -> Outcome {
        let Some(list) = self.dicts.get(prefix) else { return Outcome::NoDict };
        let total = 1 + list.iter().map(|(_, c)| c).sum::<u32>();
        let mut cum = 1;
        for (s, c) in list {
            if s == suffix {
                out.push((cum, cum + c, total));
                return Outcome::Hit;
            }
            cum += c;
        }
        out.push((0, 1, total));
        Outcome::Escape
    }

    pub fn record(&mut self, prefix: &[u8], suffix: &[u8]) {
        if suffix.is_empty() {
            self.dicts.remove(prefix);
            self.blacklist.insert(prefix.to_vec());
            return;
        }
        if self.blacklist.contains(prefix) {
            return;
        }
        let list = self.dicts.entry(prefix.to_vec()).or_default();
        match list.iter_mut().find(|(s, _)| s == suffix) {
            Some((_, c)) => *c += 1,
            None => list.push((suffix.to_vec(), 1)),
        }
        if 1 + list.iter().map(|(_, c)| c).sum::<u32>() > MAX_TOTAL {
            for (_, c) in list.iter_mut() {
                *c = (*c / 2).max(1);
            }
        }
    }

    pub fn count(&self, prefix: &[u8], suffix: &[u8]) -> Option<u32> {
        self.dicts.get(prefix)?.iter().find(|(s, _)| s == suffix).map(|&(_, c)| c)
    }
}

/// Every slice a plain character-level coder emits for `input`.
pub fn ppm_slices(input: &[u8], order: usize) -> Vec<Slice> {
    let mut model = NaivePpm::new(order);
    let mut out = Vec::new();
    for &b in input {
        model.code(b.into(), &mut out);
    }
    model.code(EOF, &mut out);
    out
}

/// Every slice the dictionary-switching coder emits for `input`, derived
/// from the text split into maximal letter and non-letter runs.
pub fn vlppm_slices(input: &[u8], order: usize, prefix_len: usize) -> (Vec<Slice>, Vec<Outcome>) {
    let mut model = NaivePpm::new(order);
    let mut dicts = NaiveDicts::default();
    let mut out = Vec::new();
    let mut outcomes = Vec::new();
    for run in input.chunk_by(|a, b| a.is_ascii_alphabetic() == b.is_ascii_alphabetic()) {
        if !run[0].is_ascii_alphabetic() || run.len() < prefix_len {
            for &b in run {
                model.code(b.into(), &mut out);
            }
            continue;
        }
        let (prefix, suffix) = run.split_at(prefix_len);
        for &b in prefix {
            model.code(b.into(), &mut out);
        }
        let outcome = dicts.code(prefix, suffix, &mut out);
        for &b in suffix {
            if outcome == Outcome::Hit {
                model.prime(b.into());
            } else {
                model.code(b.into(), &mut out);
            }
        }
        dicts.record(prefix, suffix);
        outcomes.push(outcome);
    }
    model.code(EOF, &mut out);
    (out, outcomes)
}

pub fn encode(slices: &[Slice]) -> Vec<u8> {
    let mut enc = Encoder::new();
    for &(lo, hi, total) in slices {
        enc.encode(FreqSlice::new(lo, hi, total).unwrap());
    }
    enc.finish()
}

pub fn ideal_bits(slices: &[Slice]) -> f64 {
    slices.iter().map(|&(lo, hi, t)| -(f64::from(hi - lo) / f64::from(t)).log2()).sum()
}

/// English-ish text from the bundled corpus, or a synthetic stand-in.
pub fn sample_text(max: usize) -> Vec<u8> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/alice29.txt");
    match std::fs::read(path) {
        Ok(mut bytes) => {
            bytes.truncate(max);
            bytes
        }
        Err(_) => synthetic_text(max, 1),
    }
}

/// Deterministic word salad over a Zipf-ish vocabulary.
pub fn synthetic_text(len: usize, seed: u64) -> Vec<u8> {
    const WORDS: &[&str] = &[
        "the",
        "of",
        "and",
        "to",
        "in",
        "information",
        "inform",
        "informal",
        "letter",
        "let",
        "letters",
        "compression",
        "compressed",
        "compress",
        "dictionary",
        "model",
        "models",
        "modelling",
        "a",
        "is",
        "that",
        "it",
        "was",
        "for",
        "on",
        "are",
        "with",
        "they",
        "be",
        "at",
        "one",
        "have",
        "this",
        "from",
        "by",
        "hot",
        "word",
        "but",
        "what",
        "some",
        "we",
        "can",
        "out",
        "other",
        "were",
        "all",
        "there",
        "when",
        "up",
        "use",
        "your",
        "how",
        "said",
        "an",
        "each",
        "she",
        "which",
        "do",
        "their",
        "time",
        "if",
        "will",
        "way",
        "about",
        "many",
        "then",
        "them",
        "write",
        "would",
        "like",
        "so",
        "these",
        "her",
        "long",
        "make",
        "thing",
        "see",
        "him",
        "two",
        "has",
        "look",
        "more",
        "day",
        "could",
    ];
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut out = Vec::with_capacity(len + 16);
    while out.len() < len {
        let r = next();
        // squaring a uniform index skews toward the head of the list
        let u = (r % 1000) as f64 / 1000.0;
        let word = WORDS[(u * u * WORDS.len() as f64) as usize];
        if r >> 40 & 15 == 0 {
            let mut w = word.as_bytes().to_vec();
            w[0] = w[0].to_ascii_uppercase();
            out.extend_from_slice(&w);
        } else {
            out.extend_from_slice(word.as_bytes());
        }
        out.push(match r >> 48 & 31 {
            0 => b'.',
            1 => b',',
            2 => b'\n',
            _ => b' ',
        });
    }
    out.truncate(len);
    out
}
