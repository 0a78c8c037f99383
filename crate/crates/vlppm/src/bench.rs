//! Corpus runs comparing the plain character coder with the dictionary
//! coder: bits per character, gain, encoder time and model size.

use std::path::Path;
use std::time::{Duration, Instant};

use log::warn;
use rayon::prelude::*;
use vlppm_core::{compress, compress_traced, decompress, CodecConfig, ContextModel, DictStore, Symbol, Trace};

use crate::{fsio, manifest, Error};

/// Relative improvement in percent, measured against the dictionary
/// coder's rate.
pub fn gain(bpc_ppm: f64, bpc_vlppm: f64) -> f64 {
    (bpc_ppm - bpc_vlppm) / bpc_vlppm * 100.0
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub orders: Vec<u8>,
    pub prefix_len: u8,
    /// Worker threads; files run in parallel, each file sequentially.
    pub jobs: usize,
    /// Encoder timings per file and mode; the fastest one is kept.
    pub timing_runs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self { orders: vec![2, 3], prefix_len: 3, jobs: 1, timing_runs: 3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeResult {
    pub payload_bytes: usize,
    pub bpc: f64,
    pub seconds: f64,
    /// Context entries plus dictionary entries when coding ends.
    pub footprint: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FileResult {
    pub name: String,
    pub size_bytes: usize,
    pub order: u8,
    pub ppm: ModeResult,
    pub vlppm: ModeResult,
}

impl FileResult {
    pub fn gain_pct(&self) -> f64 {
        gain(self.ppm.bpc, self.vlppm.bpc)
    }

    pub fn time_ratio(&self) -> f64 {
        self.vlppm.seconds / self.ppm.seconds
    }

    pub fn mem_ratio(&self) -> f64 {
        self.vlppm.footprint as f64 / self.ppm.footprint as f64
    }
}

/// Per-order averages in the style of a results table's bottom row: the
/// mean of per-file rates, with the gain taken between the two means.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderSummary {
    pub order: u8,
    pub files: usize,
    pub bpc_ppm: f64,
    pub bpc_vlppm: f64,
    pub gain_pct: f64,
    /// Summed encoder time and summed footprint, dictionary over plain.
    pub time_ratio: f64,
    pub mem_ratio: f64,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusReport {
    pub results: Vec<FileResult>,
    pub summaries: Vec<OrderSummary>,
    /// Files left out, with the reason.
    pub skipped: Vec<(String, String)>,
}

#[derive(Default)]
struct Footprint {
    context: usize,
    dict: usize,
}

impl Trace for Footprint {
    fn char_coded(&mut self, _: Symbol, model: &ContextModel) {
        self.context = model.entry_count();
    }

    fn word_recorded(&mut self, _: &[u8], _: &[u8], _: vlppm_core::SuffixOutcome, store: &DictStore) {
        self.dict = store.entry_count();
    }
}

/// Fastest encoder time of each config. Runs alternate between the configs
/// so that slow drifts in machine load hit all of them alike.
pub fn time_encoders(data: &[u8], configs: &[CodecConfig], runs: usize) -> Vec<Duration> {
    let mut best = vec![Duration::MAX; configs.len()];
    for _ in 0..runs.max(1) {
        for (config, best) in configs.iter().zip(&mut best) {
            let start = Instant::now();
            std::hint::black_box(compress(std::hint::black_box(data), config).ok());
            *best = (*best).min(start.elapsed());
        }
    }
    best
}

fn run_mode(name: &str, data: &[u8], config: &CodecConfig) -> Result<ModeResult, Error> {
    let mut fp = Footprint::default();
    let container = compress_traced(data, config, &mut fp)?;
    let restored = decompress(&container).ok();
    if restored.as_deref() != Some(data) {
        return Err(Error::Roundtrip { file: name.to_string(), mode: config.mode, order: config.order });
    }
    let payload_bytes = container.payload.len();
    Ok(ModeResult {
        payload_bytes,
        bpc: 8.0 * payload_bytes as f64 / data.len() as f64,
        seconds: 0.0,
        footprint: fp.context + fp.dict,
    })
}

/// Benchmarks one non-empty input at one order in both modes.
pub fn bench_file(name: &str, data: &[u8], order: u8, config: &BenchConfig) -> Result<FileResult, Error> {
    let ppm = CodecConfig::ppm(order);
    let vlppm = CodecConfig { prefix_len: config.prefix_len, ..CodecConfig::vlppm(order) };
    let mut result = FileResult {
        name: name.to_string(),
        size_bytes: data.len(),
        order,
        ppm: run_mode(name, data, &ppm)?,
        vlppm: run_mode(name, data, &vlppm)?,
    };
    let times = time_encoders(data, &[ppm, vlppm], config.timing_runs);
    result.ppm.seconds = times[0].as_secs_f64();
    result.vlppm.seconds = times[1].as_secs_f64();
    Ok(result)
}

pub fn summarize(results: &[FileResult], orders: &[u8]) -> Vec<OrderSummary> {
    orders
        .iter()
        .filter_map(|&order| {
            let rows: Vec<_> = results.iter().filter(|r| r.order == order).collect();
            if rows.is_empty() {
                return None;
            }
            let n = rows.len() as f64;
            let bpc_ppm = rows.iter().map(|r| r.ppm.bpc).sum::<f64>() / n;
            let bpc_vlppm = rows.iter().map(|r| r.vlppm.bpc).sum::<f64>() / n;
            let sum = |f: fn(&FileResult) -> f64| rows.iter().map(|r| f(r)).sum::<f64>();
            Some(OrderSummary {
                order,
                files: rows.len(),
                bpc_ppm,
                bpc_vlppm,
                gain_pct: gain(bpc_ppm, bpc_vlppm),
                time_ratio: sum(|r| r.vlppm.seconds) / sum(|r| r.ppm.seconds),
                mem_ratio: sum(|r| r.vlppm.footprint as f64) / sum(|r| r.ppm.footprint as f64),
            })
        })
        .collect()
}

enum Loaded {
    Ready(String, Vec<u8>),
    Skipped(String, String),
}

fn load(path: &Path, expected: Option<[u8; 32]>) -> Loaded {
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let skip = |why: String| {
        warn!("skipping {name}: {why}");
        Loaded::Skipped(name.clone(), why)
    };
    let data = match fsio::read(path) {
        Ok(data) => data,
        Err(e) => return skip(e.to_string()),
    };
    if data.is_empty() {
        return skip("empty file".into());
    }
    if let Some(want) = expected {
        if manifest::sha256(&data) != want {
            return skip("sha256 does not match the manifest".into());
        }
    }
    Loaded::Ready(name, data)
}

/// Runs every corpus file at every order in both modes.
///
/// Unreadable, empty or mismatching files are skipped with a warning. A
/// file that fails to round-trip aborts the run.
pub fn run_corpus(dir: &Path, config: &BenchConfig) -> Result<CorpusReport, Error> {
    let files = manifest::corpus_files(dir)?;
    let mut report = CorpusReport::default();
    let mut inputs = Vec::new();
    for (path, digest) in files {
        match load(&path, digest) {
            Loaded::Ready(name, data) => inputs.push((name, data)),
            Loaded::Skipped(name, why) => report.skipped.push((name, why)),
        }
    }
    let jobs: Vec<_> =
        config.orders.iter().flat_map(|&order| inputs.iter().map(move |(name, data)| (order, name, data))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs.max(1)).build().expect("thread pool");
    report.results = pool.install(|| {
        jobs.par_iter().map(|&(order, name, data)| bench_file(name, data, order, config)).collect::<Result<Vec<_>, _>>()
    })?;
    report.summaries = summarize(&report.results, &config.orders);
    Ok(report)
}
