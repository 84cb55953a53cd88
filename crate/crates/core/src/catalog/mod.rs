//! Canonical JSON documents for catalogs, methods and observation sets, plus
//! the shipped reference catalog and method corpus.
//!
//! Unknown top-level keys are schema errors, unknown keys inside nested
//! objects are warnings. Set-valued method fields are deduplicated with a
//! warning.

mod builtin;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use builtin::{builtin_reference, corpus, corpus_entry, CorpusEntry};

use crate::error::{Error, Result};
use crate::model::{
    validate_framework, Element, ElementId, FrameworkMetadata, Indicator, IndicatorObservation,
    Issue, IssueCode, Link, MethodDefinition, ObservationSet, ReferenceFramework, Subject,
};

pub const FORMAT_VERSION: u32 = 1;

/// A parsed document together with the non-fatal issues found in it.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<Issue>,
}

#[derive(Serialize, Deserialize)]
struct CatalogDocument {
    format_version: u32,
    metadata: FrameworkMetadata,
    objectives: Vec<Element>,
    principles: Vec<Element>,
    practices: Vec<Element>,
    indicators: Vec<Indicator>,
    op_links: Vec<Link>,
    pp_links: Vec<Link>,
    pi_links: Vec<Link>,
}

#[derive(Serialize, Deserialize)]
struct MethodDocument {
    format_version: u32,
    id: ElementId,
    name: String,
    objectives: Vec<ElementId>,
    principles: Vec<ElementId>,
    practices: Vec<ElementId>,
    notes: String,
}

#[derive(Serialize, Deserialize)]
struct ObservationsDocument {
    format_version: u32,
    organization: String,
    method: ElementId,
    observations: Vec<IndicatorObservation>,
}

const CATALOG_KEYS: &[&str] = &[
    "format_version",
    "metadata",
    "objectives",
    "principles",
    "practices",
    "indicators",
    "op_links",
    "pp_links",
    "pi_links",
];
const METHOD_KEYS: &[&str] = &[
    "format_version",
    "id",
    "name",
    "objectives",
    "principles",
    "practices",
    "notes",
];
const OBSERVATIONS_KEYS: &[&str] = &["format_version", "organization", "method", "observations"];
const ELEMENT_KEYS: &[&str] = &["id", "name", "description", "source"];
const INDICATOR_KEYS: &[&str] = &["id", "name", "category", "description", "source"];
const METADATA_KEYS: &[&str] = &["name", "version"];
const OBSERVATION_KEYS: &[&str] = &["indicator", "level", "evidence", "observed_on"];

/// Parses raw bytes as JSON, mapping failures to `syntax-error`.
pub(crate) fn read_json(document: &[u8]) -> Result<Value> {
    serde_json::from_slice(document).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Pretty-printed JSON with a trailing newline.
pub(crate) fn to_canonical_bytes<T: Serialize + ?Sized>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("document types always serialize");
    bytes.push(b'\n');
    bytes
}

/// Checks the top-level shape shared by every document kind.
fn check_top_level(value: &Value, allowed: &[&str], kind: &str) -> Result<()> {
    let object = value
        .as_object()
        .ok_or_else(|| Error::Schema(format!("{kind} document must be a JSON object")))?;
    let unknown: Vec<_> = object
        .keys()
        .filter(|k| !allowed.contains(&k.as_str()))
        .collect();
    if !unknown.is_empty() {
        let names: Vec<_> = unknown.iter().map(|k| format!("`{k}`")).collect();
        return Err(Error::Schema(format!(
            "unknown top-level key(s) {} in {kind} document",
            names.join(", ")
        )));
    }
    match object.get("format_version") {
        None => Err(Error::Schema("missing field `format_version`".into())),
        Some(v) if v.as_u64() == Some(FORMAT_VERSION as u64) => Ok(()),
        Some(v) => Err(Error::Schema(format!(
            "unsupported format_version {v} (expected {FORMAT_VERSION})"
        ))),
    }
}

fn warn_unknown_keys(object: &Value, path: &str, allowed: &[&str], warnings: &mut Vec<Issue>) {
    if let Some(map) = object.as_object() {
        for key in map.keys().filter(|k| !allowed.contains(&k.as_str())) {
            warnings.push(Issue::warning(
                IssueCode::UnknownKey,
                Subject::Path(format!("{path}.{key}")),
                format!("unknown key `{key}` is ignored"),
            ));
        }
    }
}

fn warn_unknown_keys_in_list(
    value: &Value,
    field: &str,
    allowed: &[&str],
    warnings: &mut Vec<Issue>,
) {
    if let Some(items) = value.get(field).and_then(Value::as_array) {
        for (i, item) in items.iter().enumerate() {
            warn_unknown_keys(item, &format!("{field}[{i}]"), allowed, warnings);
        }
    }
}

fn decode<T: serde::de::DeserializeOwned>(value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))
}

/// Parses a catalog document and validates the framework it describes.
pub fn parse_catalog(document: &[u8]) -> Result<Parsed<ReferenceFramework>> {
    let value = read_json(document)?;
    check_top_level(&value, CATALOG_KEYS, "catalog")?;

    let mut warnings = Vec::new();
    if let Some(metadata) = value.get("metadata") {
        warn_unknown_keys(metadata, "metadata", METADATA_KEYS, &mut warnings);
    }
    for field in ["objectives", "principles", "practices"] {
        warn_unknown_keys_in_list(&value, field, ELEMENT_KEYS, &mut warnings);
    }
    warn_unknown_keys_in_list(&value, "indicators", INDICATOR_KEYS, &mut warnings);

    let doc: CatalogDocument = decode(value)?;
    let framework = ReferenceFramework {
        metadata: doc.metadata,
        objectives: doc.objectives,
        principles: doc.principles,
        practices: doc.practices,
        indicators: doc.indicators,
        op_links: doc.op_links,
        pp_links: doc.pp_links,
        pi_links: doc.pi_links,
    };
    let report = validate_framework(&framework);
    if !report.valid {
        return Err(Error::Semantic(report));
    }
    warnings.extend(report.issues);
    Ok(Parsed {
        value: framework,
        warnings,
    })
}

/// Canonical catalog document: elements sorted by id, links sorted as pairs.
pub fn emit_catalog(framework: &ReferenceFramework) -> Result<Vec<u8>> {
    let report = validate_framework(framework);
    if !report.valid {
        return Err(Error::FrameworkInvalid(report));
    }
    let fw = framework.canonical();
    Ok(to_canonical_bytes(&CatalogDocument {
        format_version: FORMAT_VERSION,
        metadata: fw.metadata,
        objectives: fw.objectives,
        principles: fw.principles,
        practices: fw.practices,
        indicators: fw.indicators,
        op_links: fw.op_links,
        pp_links: fw.pp_links,
        pi_links: fw.pi_links,
    }))
}

fn dedup(ids: Vec<ElementId>, field: &str, warnings: &mut Vec<Issue>) -> BTreeSet<ElementId> {
    let mut set = BTreeSet::new();
    for id in ids {
        if set.contains(&id) {
            warnings.push(Issue::warning(
                IssueCode::DuplicateEntry,
                Subject::Element(id.clone()),
                format!("`{id}` is listed more than once in `{field}`"),
            ));
        } else {
            set.insert(id);
        }
    }
    set
}

/// Parses a method document. Ids are not resolved against any framework.
pub fn parse_method(document: &[u8]) -> Result<Parsed<MethodDefinition>> {
    let value = read_json(document)?;
    check_top_level(&value, METHOD_KEYS, "method")?;
    let doc: MethodDocument = decode(value)?;

    let mut warnings = Vec::new();
    let method = MethodDefinition {
        id: doc.id,
        name: doc.name,
        objectives: dedup(doc.objectives, "objectives", &mut warnings),
        principles: dedup(doc.principles, "principles", &mut warnings),
        practices: dedup(doc.practices, "practices", &mut warnings),
        notes: doc.notes,
    };
    Ok(Parsed {
        value: method,
        warnings,
    })
}

pub fn emit_method(method: &MethodDefinition) -> Vec<u8> {
    to_canonical_bytes(&MethodDocument {
        format_version: FORMAT_VERSION,
        id: method.id.clone(),
        name: method.name.clone(),
        objectives: method.objectives.iter().cloned().collect(),
        principles: method.principles.iter().cloned().collect(),
        practices: method.practices.iter().cloned().collect(),
        notes: method.notes.clone(),
    })
}

/// Parses an observation set. Duplicate and unknown indicators are left for
/// `validate_observations` to report.
pub fn parse_observations(document: &[u8]) -> Result<Parsed<ObservationSet>> {
    let value = read_json(document)?;
    check_top_level(&value, OBSERVATIONS_KEYS, "observations")?;
    let mut warnings = Vec::new();
    warn_unknown_keys_in_list(&value, "observations", OBSERVATION_KEYS, &mut warnings);
    let doc: ObservationsDocument = decode(value)?;
    Ok(Parsed {
        value: ObservationSet {
            organization: doc.organization,
            method: doc.method,
            observations: doc.observations,
        },
        warnings,
    })
}

/// Emits observations in their recorded order.
pub fn emit_observations(observations: &ObservationSet) -> Vec<u8> {
    to_canonical_bytes(&ObservationsDocument {
        format_version: FORMAT_VERSION,
        organization: observations.organization.clone(),
        method: observations.method.clone(),
        observations: observations.observations.clone(),
    })
}
