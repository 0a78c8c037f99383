//! Corpus manifests: one `filename<TAB>sha256` line per file, digest
//! optional. Blank lines and `#` comments are ignored.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::Error;

/// Name the harness looks for inside a corpus directory.
pub const MANIFEST_NAME: &str = "MANIFEST";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub sha256: Option<[u8; 32]>,
}

pub fn parse(text: &str, path: &Path) -> Result<Vec<Entry>, Error> {
    let bad = |line: usize, msg: String| Error::Manifest { path: path.to_path_buf(), line, msg };
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let name = fields.next().unwrap_or_default();
        let digest = fields.next().map(str::trim).filter(|d| !d.is_empty());
        if fields.next().is_some() {
            return Err(bad(i + 1, "expected at most two tab-separated fields".into()));
        }
        if name.is_empty() || name.contains(['/', '\\']) || name == "." || name == ".." {
            return Err(bad(i + 1, format!("bad file name {name:?}")));
        }
        let sha256 = match digest {
            None => None,
            Some(hex_digest) => {
                let mut out = [0u8; 32];
                hex::decode_to_slice(hex_digest, &mut out)
                    .map_err(|e| bad(i + 1, format!("bad sha256 {hex_digest:?}: {e}")))?;
                Some(out)
            }
        };
        entries.push(Entry { name: name.to_string(), sha256 });
    }
    Ok(entries)
}

pub fn load(path: &Path) -> Result<Vec<Entry>, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text, path)
}

pub fn sha256(bytes: &[u8]) -> [u8; 32] {
    Sha256::digest(bytes).into()
}

/// A file to benchmark and the digest it must have, if one was given.
pub type CorpusFile = (PathBuf, Option<[u8; 32]>);

/// Files to benchmark in `dir`: the manifest's list when there is one,
/// otherwise every visible regular file, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<CorpusFile>, Error> {
    let manifest = dir.join(MANIFEST_NAME);
    if manifest.is_file() {
        return Ok(load(&manifest)?.into_iter().map(|e| (dir.join(e.name), e.sha256)).collect());
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if !hidden && entry.path().is_file() {
            files.push((entry.path(), None));
        }
    }
    files.sort();
    Ok(files)
}
