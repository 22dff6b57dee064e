//! JSON input and output for rings and modules.
//!
//! Rings: `{"name", "elements", "add", "mul"}`. Modules additionally carry
//! `"ring"` (a catalog key, a path relative to the module file, or an inline
//! ring object) and `"action"`, rows indexed by ring elements. An optional
//! `"zero"` label names the additive identity when it is not listed first.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::catalog;
use crate::structure::{FiniteModule, FiniteNearRing, RingAction, ModuleTables, RingTables, Strictness, ValidationError};

/// Order cap applied by [`load_path`] unless overridden.
pub const DEFAULT_MAX_ORDER: usize = 256;
/// Order cap for power modules.
pub const DEFAULT_MAX_POWER_ORDER: usize = 1024;

/// Reads `NEARPRIME_MAX_ORDER`, falling back to `default`.
pub fn max_order_from_env(default: usize) -> usize {
    std::env::var("NEARPRIME_MAX_ORDER").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("unknown ring reference {0:?}")]
    UnknownRing(String),
    #[error("zero label {0:?} is not among the elements")]
    UnknownZero(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Named(String),
    Inline(RingSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub name: String,
    pub ring: RingRef,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub action: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
}

/// A loaded input file.
#[derive(Debug, Clone)]
pub enum Structure {
    Ring(Arc<FiniteNearRing>),
    Module(FiniteModule),
}

impl Structure {
    pub fn ring(&self) -> &Arc<FiniteNearRing> {
        match self {
            Structure::Ring(r) => r,
            Structure::Module(m) => m.ring_arc(),
        }
    }

    /// The module to analyse: the module itself, or `R_R` for a ring.
    pub fn to_module(&self) -> FiniteModule {
        match self {
            Structure::Ring(r) => FiniteModule::regular(Arc::clone(r)),
            Structure::Module(m) => m.clone(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Structure::Ring(r) => r.name(),
            Structure::Module(m) => m.name(),
        }
    }
}

/// Load options shared by every entry point.
#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    pub strictness: Strictness,
    pub max_order: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self { strictness: Strictness::Permissive, max_order: DEFAULT_MAX_ORDER }
    }
}

/// Permutation moving the zero label to index 0, others keep their order.
/// Returns `new_index[old]`.
fn zero_permutation(elements: &[String], zero: Option<&str>) -> Result<Option<Vec<usize>>, IoError> {
    let Some(z) = zero else { return Ok(None) };
    let pos = elements.iter().position(|e| e == z).ok_or_else(|| IoError::UnknownZero(z.to_string()))?;
    if pos == 0 {
        return Ok(None);
    }
    let new_index = (0..elements.len())
        .map(|i| match i {
            i if i == pos => 0,
            i if i < pos => i + 1,
            i => i,
        })
        .collect();
    Ok(Some(new_index))
}

fn permute_labels(elements: Vec<String>, p: &[usize]) -> Vec<String> {
    let mut out = vec![String::new(); elements.len()];
    for (old, l) in elements.into_iter().enumerate() {
        out[p[old]] = l;
    }
    out
}

/// Relabels a square table whose entries and both axes live in one carrier.
/// Tables of the wrong shape pass through for validation to report.
fn permute_square(t: Vec<Vec<usize>>, p: &[usize]) -> Vec<Vec<usize>> {
    let n = p.len();
    if t.len() != n || t.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return t;
    }
    let mut out = vec![vec![0; n]; n];
    for (a, row) in t.iter().enumerate() {
        for (b, &x) in row.iter().enumerate() {
            out[p[a]][p[b]] = p[x];
        }
    }
    out
}

/// Relabels an action table: rows by `rows`, columns and entries by `cols`.
fn permute_action(t: Vec<Vec<usize>>, rows: Option<&[usize]>, cols: Option<&[usize]>) -> Vec<Vec<usize>> {
    let n = cols.map_or(0, <[usize]>::len);
    let shape_ok = t.iter().all(|r| cols.is_none() || (r.len() == n && r.iter().all(|&x| x < n)))
        && rows.map_or(true, |p| p.len() == t.len());
    if !shape_ok {
        return t;
    }
    let mut out = t.clone();
    for (r, row) in t.into_iter().enumerate() {
        let r2 = rows.map_or(r, |p| p[r]);
        out[r2] = match cols {
            None => row,
            Some(p) => {
                let mut new = vec![0; n];
                for (c, x) in row.into_iter().enumerate() {
                    new[p[c]] = p[x];
                }
                new
            }
        };
    }
    out
}

impl RingSpec {
    /// Tables with the zero label moved to index 0, plus the permutation used.
    fn into_tables(self) -> Result<(RingTables, Option<Vec<usize>>), IoError> {
        let perm = zero_permutation(&self.elements, self.zero.as_deref())?;
        let RingSpec { name, elements, add, mul, .. } = self;
        let tables = match &perm {
            None => RingTables { name, elements, add, mul },
            Some(p) => RingTables {
                name,
                elements: permute_labels(elements, p),
                add: permute_square(add, p),
                mul: permute_square(mul, p),
            },
        };
        Ok((tables, perm))
    }

    pub fn build(self, opts: LoadOptions) -> Result<FiniteNearRing, IoError> {
        let (tables, _) = self.into_tables()?;
        Ok(FiniteNearRing::validate_bounded(tables, opts.strictness, opts.max_order)?)
    }
}

impl From<&FiniteNearRing> for RingSpec {
    fn from(r: &FiniteNearRing) -> Self {
        let t = r.tables();
        RingSpec { name: t.name, elements: t.elements, add: t.add, mul: t.mul, zero: None }
    }
}

/// Parse a ring-or-module document. Relative ring paths resolve against `base`.
pub fn parse_str(text: &str, base: Option<&Path>, opts: LoadOptions) -> Result<Structure, IoError> {
    let value: Value = serde_json::from_str(text)?;
    parse_value(value, base, opts)
}

pub fn parse_value(value: Value, base: Option<&Path>, opts: LoadOptions) -> Result<Structure, IoError> {
    let is_module = value.get("action").is_some();
    if !is_module {
        let spec: RingSpec = serde_json::from_value(value)?;
        return Ok(Structure::Ring(Arc::new(spec.build(opts)?)));
    }
    let spec: ModuleSpec = serde_json::from_value(value)?;
    let (ring, ring_perm) = resolve_ring(spec.ring, base, opts)?;
    let perm = zero_permutation(&spec.elements, spec.zero.as_deref())?;
    let elements = match &perm {
        Some(p) => permute_labels(spec.elements, p),
        None => spec.elements,
    };
    let add = match &perm {
        Some(p) => permute_square(spec.add, p),
        None => spec.add,
    };
    let action = if perm.is_some() || ring_perm.is_some() {
        permute_action(spec.action, ring_perm.as_deref(), perm.as_deref())
    } else {
        spec.action
    };
    let tables = ModuleTables { name: spec.name, elements, add, action };
    Ok(Structure::Module(FiniteModule::validate_bounded(ring, tables, opts.max_order)?))
}

fn resolve_ring(r: RingRef, base: Option<&Path>, opts: LoadOptions) -> Result<(Arc<FiniteNearRing>, Option<Vec<usize>>), IoError> {
    match r {
        RingRef::Inline(spec) => {
            let (tables, perm) = spec.into_tables()?;
            Ok((Arc::new(FiniteNearRing::validate_bounded(tables, opts.strictness, opts.max_order)?), perm))
        }
        RingRef::Named(name) => {
            if let Some(text) = catalog::fixture_json(&name) {
                let spec: RingSpec = serde_json::from_str(text)?;
                let (tables, perm) = spec.into_tables()?;
                return Ok((Arc::new(FiniteNearRing::validate_bounded(tables, opts.strictness, opts.max_order)?), perm));
            }
            let path = match base {
                Some(dir) => dir.join(&name),
                None => PathBuf::from(&name),
            };
            if !path.is_file() {
                return Err(IoError::UnknownRing(name));
            }
            let text = read(&path)?;
            let spec: RingSpec = serde_json::from_str(&text)?;
            let (tables, perm) = spec.into_tables()?;
            Ok((Arc::new(FiniteNearRing::validate_bounded(tables, opts.strictness, opts.max_order)?), perm))
        }
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_path_buf(), source })
}

/// Load a ring or module file.
pub fn load_path(path: &Path, opts: LoadOptions) -> Result<Structure, IoError> {
    let text = read(path)?;
    parse_str(&text, path.parent(), opts)
}

fn table_json(t: &[Vec<usize>]) -> String {
    let rows: Vec<String> = t.iter().map(|r| format!("    [{}]", r.iter().map(usize::to_string).collect::<Vec<_>>().join(", "))).collect();
    format!("[\n{}\n  ]", rows.join(",\n"))
}

fn labels_json(l: &[String]) -> String {
    serde_json::to_string(l).unwrap().replace("\",\"", "\", \"")
}

/// Ring as JSON, one table row per line.
pub fn ring_to_json(r: &FiniteNearRing) -> String {
    let t = r.tables();
    format!(
        "{{\n  \"name\": {},\n  \"elements\": {},\n  \"add\": {},\n  \"mul\": {}\n}}\n",
        serde_json::to_string(&t.name).unwrap(),
        labels_json(&t.elements),
        table_json(&t.add),
        table_json(&t.mul)
    )
}

/// Module as JSON with the ring inlined.
pub fn module_to_json(m: &FiniteModule) -> String {
    let t = m.tables();
    let ring = ring_to_json(m.ring()).trim_end().replace('\n', "\n  ");
    format!(
        "{{\n  \"name\": {},\n  \"ring\": {},\n  \"elements\": {},\n  \"add\": {},\n  \"action\": {}\n}}\n",
        serde_json::to_string(&t.name).unwrap(),
        ring,
        labels_json(&t.elements),
        table_json(&t.add),
        table_json(&t.action)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::AdditiveGroup;

    #[test]
    fn ring_round_trip() {
        let text = catalog::fixture_json("klein4").unwrap();
        let Structure::Ring(r) = parse_str(text, None, LoadOptions::default()).unwrap() else { panic!() };
        let again = ring_to_json(&r);
        assert_eq!(again, text);
    }

    #[test]
    fn zero_label_reorders() {
        // Z2 listed with the identity second
        let text = r#"{"name":"z2","elements":["a","e"],"add":[[1,0],[0,1]],"mul":[[0,1],[1,1]],"zero":"e"}"#;
        let Structure::Ring(r) = parse_str(text, None, LoadOptions::default()).unwrap() else { panic!() };
        assert_eq!(r.labels(), ["e", "a"]);
        assert_eq!(r.add(1, 1), 0);
        assert_eq!(r.mul(1, 1), 1);
        assert_eq!(r.mul(0, 1), 0);
        assert_eq!(r.mul(1, 0), 0);

        let bad = r#"{"name":"z2","elements":["a","e"],"add":[[1,0],[0,1]],"mul":[[0,1],[1,1]],"zero":"q"}"#;
        assert!(matches!(parse_str(bad, None, LoadOptions::default()), Err(IoError::UnknownZero(_))));
    }

    #[test]
    fn module_with_named_and_inline_ring() {
        let text = r#"{"name":"m","ring":"z3","elements":["0","1","2"],
            "add":[[0,1,2],[1,2,0],[2,0,1]],"action":[[0,0,0],[0,0,1],[0,0,2]]}"#;
        let Structure::Module(m) = parse_str(text, None, LoadOptions::default()).unwrap() else { panic!() };
        assert_eq!(m.ring().name(), "z3");
        let round = module_to_json(&m);
        let Structure::Module(m2) = parse_str(&round, None, LoadOptions::default()).unwrap() else { panic!() };
        assert_eq!(m2.action_table(), m.action_table());

        let missing = text.replace("\"z3\"", "\"nope.json\"");
        assert!(matches!(parse_str(&missing, None, LoadOptions::default()), Err(IoError::UnknownRing(_))));
    }

    #[test]
    fn module_zero_relabels_action_columns() {
        // Z3 regular module with elements listed as 1, 0, 2
        let text = r#"{"name":"m","ring":"z3","elements":["1","0","2"],"zero":"0",
            "add":[[2,0,1],[0,1,2],[1,2,0]],"action":[[1,1,1],[1,1,0],[1,1,2]]}"#;
        let Structure::Module(m) = parse_str(text, None, LoadOptions::default()).unwrap() else { panic!() };
        let reg = FiniteModule::regular(m.ring_arc().clone());
        assert_eq!(m.labels(), reg.labels());
        assert_eq!(m.add_table(), reg.add_table());
        assert_eq!(m.action_table(), reg.action_table());
    }

    #[test]
    fn limits_and_errors() {
        let text = catalog::fixture_json("dn32").unwrap();
        let opts = LoadOptions { max_order: 4, ..Default::default() };
        assert!(matches!(parse_str(text, None, opts), Err(IoError::Validation(ValidationError::TooLarge { .. }))));
        assert!(matches!(parse_str("{", None, LoadOptions::default()), Err(IoError::Json(_))));
        let strict = LoadOptions { strictness: Strictness::Strict, ..Default::default() };
        let z6 = catalog::fixture_json("z6").unwrap();
        assert!(matches!(
            parse_str(z6, None, strict),
            Err(IoError::Validation(ValidationError::NotZeroSymmetric { .. }))
        ));
    }
}
