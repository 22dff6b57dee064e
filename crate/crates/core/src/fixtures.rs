//! Catalog tables for unit tests.

use std::sync::Arc;

use crate::catalog;
use crate::io::{self, LoadOptions, Structure};
use crate::structure::{FiniteNearRing, Strictness};

pub fn ring(key: &str, strictness: Strictness) -> Result<Arc<FiniteNearRing>, io::IoError> {
    let text = catalog::fixture_json(key).expect("known fixture");
    match io::parse_str(text, None, LoadOptions { strictness, ..Default::default() })? {
        Structure::Ring(r) => Ok(r),
        Structure::Module(_) => unreachable!("fixtures are rings"),
    }
}
