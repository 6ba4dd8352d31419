//! Document-frequency counts of phrases over a local text corpus.

use std::path::{Path, PathBuf};

use conceptq_core::counts::normalize_text;
use rayon::prelude::*;
use walkdir::WalkDir;

use crate::error::{Error, Result};

/// A file that could not be read, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub path: PathBuf,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusCount {
    /// Documents containing each phrase, in the order the phrases were given.
    pub counts: Vec<u64>,
    pub documents: u64,
    /// Sorted by path.
    pub skipped: Vec<Skipped>,
}

enum Scan {
    Read(Vec<bool>),
    Skipped(Skipped),
}

/// Counts, for every phrase, the files under `root` that contain it once
/// case and whitespace are normalised. Unreadable files are skipped and
/// reported.
pub fn corpus_phrase_count(root: &Path, phrases: &[String]) -> Result<CorpusCount> {
    let meta = std::fs::metadata(root).map_err(|e| Error::io(root, e))?;
    if !meta.is_dir() {
        return Err(Error::format(root, "corpus root is not a directory"));
    }
    let normalized: Vec<String> = phrases.iter().map(|p| normalize_text(p)).collect();
    if let Some(i) = normalized.iter().position(String::is_empty) {
        return Err(Error::Usage(format!("phrase {:?} is empty", phrases[i])));
    }

    let mut files = Vec::new();
    let mut skipped = Vec::new();
    for entry in WalkDir::new(root).follow_links(true) {
        match entry {
            Ok(e) if e.file_type().is_file() => files.push(e.into_path()),
            Ok(_) => {}
            Err(e) => skipped.push(Skipped {
                path: e
                    .path()
                    .map_or_else(|| root.to_path_buf(), Path::to_path_buf),
                reason: e.to_string(),
            }),
        }
    }

    let scans: Vec<Scan> = files
        .par_iter()
        .map(|path| match std::fs::read_to_string(path) {
            Ok(text) => {
                let doc = normalize_text(&text);
                Scan::Read(
                    normalized
                        .iter()
                        .map(|p| doc.contains(p.as_str()))
                        .collect(),
                )
            }
            Err(e) => Scan::Skipped(Skipped {
                path: path.clone(),
                reason: e.to_string(),
            }),
        })
        .collect();

    let mut counts = vec![0u64; phrases.len()];
    let mut documents = 0;
    for scan in scans {
        match scan {
            Scan::Read(hits) => {
                documents += 1;
                for (c, hit) in counts.iter_mut().zip(hits) {
                    *c += u64::from(hit);
                }
            }
            Scan::Skipped(s) => skipped.push(s),
        }
    }
    skipped.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(CorpusCount {
        counts,
        documents,
        skipped,
    })
}
