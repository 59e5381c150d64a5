//! Source-tree scanning.

use std::fs;
use std::path::{Path, PathBuf};

use couplaw_core::corpus::{Corpus, SourceUnit, Unresolved};
use couplaw_core::parse::{parse_source, ParseError};
use rayon::prelude::*;
use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::interchange;

/// A loaded corpus plus the diagnostics gathered on the way.
#[derive(Debug)]
pub struct Scan {
    pub corpus: Corpus,
    pub unresolved: Vec<Unresolved>,
    /// Files that failed to parse; their classes are absent from the corpus.
    pub parse_errors: Vec<ParseError>,
    pub files: usize,
}

/// All `.java` files under `root`, sorted by path.
pub fn java_files(root: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in WalkDir::new(root).follow_links(false) {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).to_owned();
            Error::io(path, e.into())
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "java") {
            files.push(entry.into_path());
        }
    }
    files.sort();
    Ok(files)
}

fn display_name(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Parses every `.java` file under `root`. Files are parsed in parallel but
/// combined in path order, so the result does not depend on scheduling.
/// Malformed files are reported and skipped.
pub fn scan_tree(root: &Path) -> Result<Scan> {
    let files = java_files(root)?;
    let parsed: Vec<Result<std::result::Result<SourceUnit, ParseError>>> = files
        .par_iter()
        .map(|path| {
            let name = display_name(root, path);
            let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
            Ok(match String::from_utf8(bytes) {
                Ok(text) => parse_source(&text, &name),
                Err(_) => Err(ParseError {
                    file: name,
                    line: 1,
                    message: "file is not valid UTF-8".to_owned(),
                }),
            })
        })
        .collect();
    let mut units = Vec::new();
    let mut parse_errors = Vec::new();
    for result in parsed {
        match result? {
            Ok(unit) => units.push(unit),
            Err(e) => parse_errors.push(e),
        }
    }
    let resolved = Corpus::from_units(units)?;
    Ok(Scan {
        corpus: resolved.corpus,
        unresolved: resolved.unresolved,
        parse_errors,
        files: files.len(),
    })
}

/// A directory is scanned; anything else is read as an interchange file.
pub fn load_input(path: &Path) -> Result<Scan> {
    if path.is_dir() {
        return scan_tree(path);
    }
    let corpus = interchange::load_summaries(path)?;
    Ok(Scan {
        unresolved: corpus.unresolved(),
        corpus,
        parse_errors: Vec::new(),
        files: 1,
    })
}
