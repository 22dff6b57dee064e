//! Argument parsing shared by the subcommands.

use std::path::Path;

use nearprime_core::catalog::{self, CatalogError};
use nearprime_core::io::{self, IoError, LoadOptions, Structure, DEFAULT_MAX_ORDER};
use nearprime_core::prime::{PrimeError, UnknownVariant, Variant};
use nearprime_core::{AdditiveGroup, ElementSet, Strictness};
use thiserror::Error;

use crate::{EXIT_INVALID, EXIT_USAGE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Catalog(CatalogError::UnknownKey(_)) => EXIT_USAGE,
            _ => EXIT_INVALID,
        }
    }
}

impl From<UnknownVariant> for CliError {
    fn from(e: UnknownVariant) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn load_options(strict: bool) -> LoadOptions {
    LoadOptions {
        strictness: if strict { Strictness::Strict } else { Strictness::Permissive },
        max_order: io::max_order_from_env(DEFAULT_MAX_ORDER),
    }
}

/// A JSON file, or a catalog key when no such file exists.
pub fn load(arg: &str, strict: bool) -> Result<Structure, CliError> {
    let opts = load_options(strict);
    let path = Path::new(arg);
    if path.exists() {
        return Ok(io::load_path(path, opts)?);
    }
    match catalog::fixture_json(arg) {
        Some(text) => Ok(io::parse_str(text, None, opts)?),
        None => Err(CliError::Usage(format!("{arg}: no such file or catalog key"))),
    }
}

pub fn variant(arg: Option<&str>) -> Result<Option<Variant>, CliError> {
    Ok(arg.map(str::parse).transpose()?)
}

/// Splits at commas outside parentheses, so tuple labels like `(0,1)` survive.
fn tokens(s: &str) -> Vec<String> {
    let s = s.trim();
    let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

/// Parses a set given by labels, falling back to indices.
pub fn set<G: AdditiveGroup>(g: &G, arg: &str) -> Result<ElementSet, CliError> {
    let mut out = ElementSet::empty();
    for t in tokens(arg) {
        let idx = g
            .labels()
            .iter()
            .position(|l| *l == t)
            .or_else(|| t.parse::<usize>().ok().filter(|&i| i < g.order()))
            .ok_or_else(|| CliError::Usage(format!("{t:?} is neither an element label nor an index below {}", g.order())))?;
        out.insert(idx);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_labels_survive() {
        assert_eq!(tokens("{(0,1), (1,0)}"), vec!["(0,1)", "(1,0)"]);
        assert_eq!(tokens("0, 1,2"), vec!["0", "1", "2"]);
        assert!(tokens("").is_empty());
    }
}
