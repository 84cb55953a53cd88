//! Assessment of agile methods with the Objectives-Principles-Practices
//! (OPP) framework.
//!
//! - [`model`]: the layered framework, method definitions, observations and
//!   their structural validation.
//! - [`catalog`]: canonical JSON documents, the shipped reference catalog and
//!   the XP/Scrum/FDD corpus.
//! - [`assessment`]: top-down adequacy, bottom-up capability and
//!   effectiveness, method comparison and reachability queries.

pub mod assessment;
pub mod catalog;
pub mod error;
pub mod model;
pub mod testkit;

pub use error::{Error, Result};
