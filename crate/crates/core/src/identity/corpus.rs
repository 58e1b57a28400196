use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::ast::IdentityDef;
use super::parser::{parse_identity, ParseError};

/// File listing the corpus: `<id> <group> <part>` per line.
pub const MANIFEST: &str = "MANIFEST";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{}:{}: {error}", path.display(), error.position().0, error.position().1)]
    Parse { path: PathBuf, error: ParseError },
    #[error("{}: {message}", path.display())]
    Manifest { path: PathBuf, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    /// Which group of results the identity belongs to, e.g. `prop3`.
    pub group: String,
    /// Item number within the group.
    pub part: u32,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.to_owned(),
        source,
    }
}

pub fn read_manifest(dir: &Path) -> Result<Vec<ManifestEntry>, CorpusError> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let mut out: Vec<ManifestEntry> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| CorpusError::Manifest {
            path: path.clone(),
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [id, group, part] = fields[..] else {
            return Err(bad(format!(
                "line {}: expected `<id> <group> <part>`",
                i + 1
            )));
        };
        let part = part
            .parse()
            .map_err(|_| bad(format!("line {}: bad part number `{part}`", i + 1)))?;
        if out.iter().any(|e| e.id == id) {
            return Err(bad(format!("line {}: duplicate id `{id}`", i + 1)));
        }
        out.push(ManifestEntry {
            id: id.to_owned(),
            group: group.to_owned(),
            part,
        });
    }
    Ok(out)
}

/// Sort key that puts `I9` before `I10`.
fn natural_key(s: &str) -> Vec<(String, u64)> {
    let mut out = Vec::new();
    let mut text = String::new();
    let mut digits = String::new();
    for c in s.chars() {
        if c.is_ascii_digit() {
            digits.push(c);
        } else {
            if !digits.is_empty() {
                out.push((
                    std::mem::take(&mut text),
                    digits.parse().unwrap_or(u64::MAX),
                ));
                digits.clear();
            }
            text.push(c);
        }
    }
    out.push((text, digits.parse().unwrap_or(0)));
    out
}

/// Loads every `.gfpid` file in `dir`.
///
/// Each file must be named after the identity it defines. With a manifest
/// present the files must match it one to one and come back in its order;
/// otherwise they are ordered by id.
pub fn load_corpus(dir: &Path) -> Result<Vec<IdentityDef>, CorpusError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .map(|e| e.map(|e| e.path()).map_err(io_err(dir)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|p| p.extension().is_some_and(|x| x == "gfpid"))
        .collect();
    files.sort();

    let mut defs = Vec::with_capacity(files.len());
    for path in &files {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        let def = parse_identity(&text).map_err(|error| CorpusError::Parse {
            path: path.clone(),
            error,
        })?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
        if stem != def.id {
            return Err(CorpusError::Manifest {
                path: path.clone(),
                message: format!("file defines `{}` but is named `{stem}`", def.id),
            });
        }
        defs.push(def);
    }

    let manifest_path = dir.join(MANIFEST);
    if !manifest_path.exists() {
        defs.sort_by_cached_key(|d| natural_key(&d.id));
        return Ok(defs);
    }
    let manifest = read_manifest(dir)?;
    let bad = |message: String| CorpusError::Manifest {
        path: manifest_path.clone(),
        message,
    };
    if let Some(d) = defs.iter().find(|d| !manifest.iter().any(|e| e.id == d.id)) {
        return Err(bad(format!("`{}` is not listed", d.id)));
    }
    let mut ordered = Vec::with_capacity(manifest.len());
    for entry in &manifest {
        let pos = defs
            .iter()
            .position(|d| d.id == entry.id)
            .ok_or_else(|| bad(format!("no file for `{}`", entry.id)))?;
        ordered.push(defs.swap_remove(pos));
    }
    Ok(ordered)
}
