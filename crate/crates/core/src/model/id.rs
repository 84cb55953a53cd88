use std::fmt;

use serde::{Deserialize, Serialize};

pub const MAX_ID_LEN: usize = 64;

/// Identifier of a framework element or method.
///
/// A lowercase token made of `[a-z0-9-]`, at most 64 characters long.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ElementId(String);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvalidId {
    #[error("identifier is empty")]
    Empty,
    #[error("identifier `{0}` is longer than 64 characters")]
    TooLong(String),
    #[error("identifier `{0}` may only contain lowercase letters, digits and '-'")]
    BadCharacter(String),
}

impl ElementId {
    pub fn new(value: impl Into<String>) -> Result<Self, InvalidId> {
        let value = value.into();
        if value.is_empty() {
            return Err(InvalidId::Empty);
        }
        if value.len() > MAX_ID_LEN {
            return Err(InvalidId::TooLong(value));
        }
        if !value
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-')
        {
            return Err(InvalidId::BadCharacter(value));
        }
        Ok(ElementId(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ElementId {
    type Error = InvalidId;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        ElementId::new(value)
    }
}

impl TryFrom<&str> for ElementId {
    type Error = InvalidId;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        ElementId::new(value)
    }
}

impl From<ElementId> for String {
    fn from(id: ElementId) -> String {
        id.0
    }
}

impl AsRef<str> for ElementId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for ElementId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Builds an [`ElementId`] from a literal known to be well formed.
///
/// Panics on malformed input; meant for shipped data and tests.
pub fn id(value: &str) -> ElementId {
    ElementId::new(value).unwrap_or_else(|e| panic!("{e}"))
}
