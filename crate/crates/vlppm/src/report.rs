//! Result tables as CSV or Markdown.

use std::fmt::Write as _;

use crate::bench::FileResult;
use crate::profile::WordLenStats;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

pub const COLUMNS: [&str; 8] = ["file", "size", "order", "bpc_ppm", "bpc_vlppm", "gain_pct", "time_ratio", "mem_ratio"];

const WORD_COLUMNS: [&str; 4] = ["word_len", "count", "bits_ppm", "bits_vlppm"];

fn cells(r: &FileResult, timings: bool) -> [String; 8] {
    [
        r.name.clone(),
        r.size_bytes.to_string(),
        r.order.to_string(),
        format!("{:.4}", r.ppm.bpc),
        format!("{:.4}", r.vlppm.bpc),
        format!("{:.2}", r.gain_pct()),
        if timings { format!("{:.3}", r.time_ratio()) } else { String::new() },
        format!("{:.4}", r.mem_ratio()),
    ]
}

/// Renders one row per file and order. With `timings` off the time column
/// is left empty, which makes the output a pure function of the corpus.
pub fn emit_report(results: &[FileResult], format: Format, timings: bool) -> Result<Vec<u8>, Error> {
    let rows: Vec<_> = results.iter().map(|r| cells(r, timings)).collect();
    table(&COLUMNS, &rows, format)
}

pub fn emit_word_lengths(stats: &WordLenStats, format: Format) -> Result<Vec<u8>, Error> {
    let rows: Vec<_> = stats
        .rows
        .iter()
        .map(|(len, r)| {
            [len.to_string(), r.count.to_string(), format!("{:.3}", r.mean_ppm()), format!("{:.3}", r.mean_vlppm())]
        })
        .collect();
    table(&WORD_COLUMNS, &rows, format)
}

fn table<const N: usize>(header: &[&str; N], rows: &[[String; N]], format: Format) -> Result<Vec<u8>, Error> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
            w.write_record(header)?;
            for row in rows {
                w.write_record(row)?;
            }
            Ok(w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?)
        }
        Format::Markdown => {
            let mut out = String::new();
            let line = |out: &mut String, cells: &mut dyn Iterator<Item = String>| {
                out.push('|');
                for c in cells {
                    let _ = write!(out, " {} |", c.replace('|', "\\|"));
                }
                out.push('\n');
            };
            line(&mut out, &mut header.iter().map(|h| h.to_string()));
            line(&mut out, &mut header.iter().map(|_| "---".to_string()));
            for row in rows {
                line(&mut out, &mut row.iter().cloned());
            }
            Ok(out.into_bytes())
        }
    }
}
