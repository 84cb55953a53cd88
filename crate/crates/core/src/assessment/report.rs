use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::catalog::{read_json, to_canonical_bytes};
use crate::error::{Error, Result};

pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Serialize)]
struct Outgoing<'a, T> {
    format_version: u32,
    #[serde(flatten)]
    report: &'a T,
}

#[derive(Deserialize)]
struct Incoming<T> {
    #[allow(dead_code)]
    format_version: u32,
    #[serde(flatten)]
    report: T,
}

/// Canonical document for an adequacy, attainment or comparison report.
pub fn emit_report<T: Serialize>(report: &T) -> Vec<u8> {
    to_canonical_bytes(&Outgoing {
        format_version: REPORT_FORMAT_VERSION,
        report,
    })
}

pub fn parse_report<T: DeserializeOwned>(document: &[u8]) -> Result<T> {
    let value = read_json(document)?;
    match value.get("format_version").and_then(|v| v.as_u64()) {
        Some(v) if v == u64::from(REPORT_FORMAT_VERSION) => {}
        Some(v) => {
            return Err(Error::Schema(format!(
                "unsupported format_version {v} (expected {REPORT_FORMAT_VERSION})"
            )))
        }
        None => return Err(Error::Schema("missing field `format_version`".into())),
    }
    let incoming: Incoming<T> =
        serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    Ok(incoming.report)
}
