//! Locating and loading table and fusion files.

use std::fs;
use std::path::{Path, PathBuf};

use schar_core::{CharacterTable, FusionMap};

use crate::format::{self, ParseError};

/// Environment variable naming the default corpus directory.
pub const CORPUS_ENV: &str = "SCHAR_CORPUS";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

/// The bundled corpus, or the directory named by `SCHAR_CORPUS`.
pub fn corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"),
    }
}

/// A path as given if it exists, else `<corpus>/<name>.json`.
pub fn resolve(name: &str) -> PathBuf {
    let p = PathBuf::from(name);
    if p.exists() {
        return p;
    }
    let file = if name.ends_with(".json") { name.to_string() } else { format!("{name}.json") };
    let candidate = corpus_dir().join(file);
    if candidate.exists() {
        candidate
    } else {
        p
    }
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })
}

pub fn load_table(name: &str) -> Result<CharacterTable, LoadError> {
    let path = resolve(name);
    let text = read(&path)?;
    format::parse_table(&text).map_err(|source| LoadError::Parse { path: path.display().to_string(), source })
}

pub fn load_fusion(name: &str) -> Result<FusionMap, LoadError> {
    let path = resolve(name);
    let text = read(&path)?;
    let doc = format::parse_fusion(&text).map_err(|source| LoadError::Parse { path: path.display().to_string(), source })?;
    Ok(FusionMap { source: doc.from, target: doc.to, class_map: doc.map })
}

/// File stems of the bundled tables, sorted.
pub fn bundled_tables() -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(corpus_dir())
        .into_iter()
        .flatten()
        .flatten()
        .filter_map(|e| e.file_name().into_string().ok())
        .filter(|n| n.ends_with(".json") && !n.ends_with(".fusion.json"))
        .map(|n| n.trim_end_matches(".json").to_string())
        .collect();
    names.sort();
    names
}
