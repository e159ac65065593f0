//! The declarations sidecar file:
//!
//! ```json
//! {"chains": [{"name": "r1", "size": "aleph0", "sib": "1",
//!              "embeds_into": [], "embeds_from": []}]}
//! ```

use std::path::Path;

use serde::Deserialize;

use dsc_core::cardinal::Cardinal;
use dsc_core::ordertype::{Declaration, Declarations, Sib};

use crate::report::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    chains: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    name: String,
    size: String,
    sib: String,
    #[serde(default)]
    embeds_into: Vec<String>,
    #[serde(default)]
    embeds_from: Vec<String>,
}

pub fn parse(text: &str) -> Result<Declarations, CliError> {
    let file: File = serde_json::from_str(text).map_err(|e| CliError::new("E_DECLS", e.to_string()))?;
    let decls = file
        .chains
        .into_iter()
        .map(|e| {
            let size: Cardinal = e.size.parse().map_err(|err: dsc_core::cardinal::CardinalError| {
                CliError::new("E_DECLS", format!("{}: {err}", e.name))
            })?;
            let sib: Sib =
                e.sib.parse().map_err(|err: String| CliError::new("E_DECLS", format!("{}: {err}", e.name)))?;
            Ok(Declaration { name: e.name, size, sib, embeds_into: e.embeds_into, embeds_from: e.embeds_from })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Declarations::new(decls).map_err(|e| CliError::new("E_DECLS", e.to_string()))
}

pub fn load(path: Option<&Path>) -> Result<Declarations, CliError> {
    match path {
        None => Ok(Declarations::empty()),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).map_err(|e| CliError::new("E_IO", format!("{}: {e}", p.display())))?;
            parse(&text)
        }
    }
}
