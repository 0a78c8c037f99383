//! Bits per word, by word length, for both coders.
//!
//! Every coded slice is charged to an input position: a character's slices
//! to that character, a dictionary escape to the last prefix letter, and a
//! dictionary hit to the first suffix letter. A word's cost is then the sum
//! over its letters, so delimiters and the end-of-stream symbol never count.

use std::collections::BTreeMap;

use vlppm_core::{compress_traced, CodecConfig, ConfigError, ContextModel, FreqSlice, Symbol, Trace, EOF};

#[derive(Default)]
struct Attribution {
    bits: Vec<f64>,
    pending: f64,
}

impl Trace for Attribution {
    fn slice(&mut self, s: FreqSlice) {
        self.pending -= (f64::from(s.width()) / f64::from(s.total())).log2();
    }

    fn char_coded(&mut self, sym: Symbol, _: &ContextModel) {
        if sym != EOF {
            self.bits.push(self.pending);
        }
        self.pending = 0.0;
    }

    fn dict_escape(&mut self) {
        if let Some(last) = self.bits.last_mut() {
            *last += self.pending;
        }
        self.pending = 0.0;
    }

    fn suffix_coded(&mut self, suffix: &[u8], _: &ContextModel) {
        self.bits.push(self.pending);
        self.bits.extend(std::iter::repeat_n(0.0, suffix.len() - 1));
        self.pending = 0.0;
    }
}

/// Ideal code length of every input byte under `config`.
pub fn bits_per_byte(data: &[u8], config: &CodecConfig) -> Result<Vec<f64>, ConfigError> {
    let mut attr = Attribution::default();
    compress_traced(data, config, &mut attr)?;
    debug_assert_eq!(attr.bits.len(), data.len());
    Ok(attr.bits)
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LenRow {
    pub count: usize,
    pub ppm_bits: f64,
    pub vlppm_bits: f64,
}

impl LenRow {
    pub fn mean_ppm(&self) -> f64 {
        self.ppm_bits / self.count as f64
    }

    pub fn mean_vlppm(&self) -> f64 {
        self.vlppm_bits / self.count as f64
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct WordLenStats {
    pub rows: BTreeMap<usize, LenRow>,
}

impl WordLenStats {
    pub fn get(&self, len: usize) -> Option<&LenRow> {
        self.rows.get(&len)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows with at least `min_count` words.
    pub fn frequent(&self, min_count: usize) -> impl Iterator<Item = (usize, &LenRow)> + '_ {
        self.rows.iter().filter(move |(_, r)| r.count >= min_count).map(|(&l, r)| (l, r))
    }
}

/// Profiles `data` with both coders at `order`.
pub fn word_length_profile(data: &[u8], order: u8, prefix_len: u8) -> Result<WordLenStats, ConfigError> {
    let ppm = bits_per_byte(data, &CodecConfig::ppm(order))?;
    let vlppm = bits_per_byte(data, &CodecConfig { prefix_len, ..CodecConfig::vlppm(order) })?;
    let mut stats = WordLenStats::default();
    let mut start = 0;
    for run in data.chunk_by(|a, b| a.is_ascii_alphabetic() == b.is_ascii_alphabetic()) {
        let span = start..start + run.len();
        start = span.end;
        if !run[0].is_ascii_alphabetic() {
            continue;
        }
        let row = stats.rows.entry(run.len()).or_default();
        row.count += 1;
        row.ppm_bits += ppm[span.clone()].iter().sum::<f64>();
        row.vlppm_bits += vlppm[span].iter().sum::<f64>();
    }
    Ok(stats)
}

/// Sample correlation coefficient; `None` for fewer than two points or a
/// constant coordinate.
pub fn pearson(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let (mx, my) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x / n, b + y / n));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_letters_no_rows() {
        let stats = word_length_profile(b"12 34, 56!\n\t", 2, 3).unwrap();
        assert!(stats.is_empty());
    }

    #[test]
    fn attribution_covers_every_byte() {
        let data = b"the information was informal; informed info, inform. ".repeat(40);
        for config in [CodecConfig::ppm(2), CodecConfig::vlppm(2)] {
            let bits = bits_per_byte(&data, &config).unwrap();
            assert_eq!(bits.len(), data.len());
            assert!(bits.iter().all(|b| *b >= 0.0));
        }
    }

    #[test]
    fn repeated_long_word_is_cheaper_with_dictionary() {
        let data = b"statistics ".repeat(500);
        let stats = word_length_profile(&data, 2, 3).unwrap();
        let row = stats.get(10).unwrap();
        assert_eq!(row.count, 500);
        assert_eq!(stats.rows.len(), 1);
        assert!(row.mean_vlppm() < row.mean_ppm(), "{row:?}");
    }

    #[test]
    fn pearson_basics() {
        let line: Vec<_> = (0..10).map(|i| (i as f64, 2.0 * i as f64 + 1.0)).collect();
        assert!((pearson(&line).unwrap() - 1.0).abs() < 1e-12);
        let down: Vec<_> = line.iter().map(|&(x, y)| (x, -y)).collect();
        assert!((pearson(&down).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(pearson(&[(1.0, 1.0)]), None);
        assert_eq!(pearson(&[(1.0, 1.0), (2.0, 1.0)]), None);
    }
}
