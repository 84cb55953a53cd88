//! Domain model of the Objectives-Principles-Practices (OPP) framework.
//!
//! A framework is a four-layer graph: objectives link to the principles that
//! support them, principles link to the practices that realize them, and
//! practices link to the observable indicators that attest to their use.
//! Methods select a subset of the first three layers; observation sets
//! record an organization's indicator levels.

mod graph;
mod id;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

pub use graph::{LinkIndex, LinkKind};
pub use id::{id, ElementId, InvalidId, MAX_ID_LEN};
pub use validate::{validate_framework, validate_method, validate_observations};

/// An objective, principle or practice. The three share one shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub id: ElementId,
    pub name: String,
    pub description: String,
    pub source: String,
}

pub type Objective = Element;
pub type Principle = Element;
pub type Practice = Element;

impl Element {
    pub fn new(id: ElementId, name: impl Into<String>) -> Self {
        Element {
            id,
            name: name.into(),
            description: String::new(),
            source: String::new(),
        }
    }

    pub fn describe(mut self, description: impl Into<String>, source: impl Into<String>) -> Self {
        self.description = description.into();
        self.source = source.into();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndicatorCategory {
    People,
    Process,
    Project,
    ProcessArtifact,
    Product,
}

impl IndicatorCategory {
    pub const ALL: [IndicatorCategory; 5] = [
        IndicatorCategory::People,
        IndicatorCategory::Process,
        IndicatorCategory::Project,
        IndicatorCategory::ProcessArtifact,
        IndicatorCategory::Product,
    ];

    pub const CAPABILITY: [IndicatorCategory; 3] = [
        IndicatorCategory::People,
        IndicatorCategory::Process,
        IndicatorCategory::Project,
    ];

    pub const EFFECTIVENESS: [IndicatorCategory; 2] = [
        IndicatorCategory::ProcessArtifact,
        IndicatorCategory::Product,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IndicatorCategory::People => "people",
            IndicatorCategory::Process => "process",
            IndicatorCategory::Project => "project",
            IndicatorCategory::ProcessArtifact => "process-artifact",
            IndicatorCategory::Product => "product",
        }
    }

    pub fn is_capability(self) -> bool {
        Self::CAPABILITY.contains(&self)
    }

    pub fn is_effectiveness(self) -> bool {
        Self::EFFECTIVENESS.contains(&self)
    }
}

impl fmt::Display for IndicatorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Indicator {
    pub id: ElementId,
    pub name: String,
    pub category: IndicatorCategory,
    pub description: String,
    pub source: String,
}

/// A directed link between adjacent layers, `(upper, lower)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Link(pub ElementId, pub ElementId);

impl Link {
    pub fn new(upper: ElementId, lower: ElementId) -> Self {
        Link(upper, lower)
    }

    pub fn upper(&self) -> &ElementId {
        &self.0
    }

    pub fn lower(&self) -> &ElementId {
        &self.1
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Objective,
    Principle,
    Practice,
    Indicator,
}

impl Layer {
    pub fn as_str(self) -> &'static str {
        match self {
            Layer::Objective => "objective",
            Layer::Principle => "principle",
            Layer::Practice => "practice",
            Layer::Indicator => "indicator",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkMetadata {
    pub name: String,
    pub version: String,
}

/// The OPP knowledge base.
///
/// Element and link collections are plain lists so that malformed input
/// (duplicate ids, duplicate links) survives parsing and can be reported by
/// [`validate_framework`]. Equality is structural: the order of elements and
/// links does not matter.
#[derive(Clone, Debug, Default)]
pub struct ReferenceFramework {
    pub metadata: FrameworkMetadata,
    pub objectives: Vec<Objective>,
    pub principles: Vec<Principle>,
    pub practices: Vec<Practice>,
    pub indicators: Vec<Indicator>,
    pub op_links: Vec<Link>,
    pub pp_links: Vec<Link>,
    pub pi_links: Vec<Link>,
}

impl ReferenceFramework {
    /// Returns a copy with every element list sorted by id and every link
    /// list sorted lexicographically.
    pub fn canonical(&self) -> ReferenceFramework {
        fn sorted<T: Clone>(items: &[T], key: impl Fn(&T, &T) -> std::cmp::Ordering) -> Vec<T> {
            let mut items = items.to_vec();
            items.sort_by(key);
            items
        }
        let by_id = |a: &Element, b: &Element| {
            (&a.id, &a.name, &a.description, &a.source).cmp(&(
                &b.id,
                &b.name,
                &b.description,
                &b.source,
            ))
        };
        ReferenceFramework {
            metadata: self.metadata.clone(),
            objectives: sorted(&self.objectives, by_id),
            principles: sorted(&self.principles, by_id),
            practices: sorted(&self.practices, by_id),
            indicators: sorted(&self.indicators, |a, b| {
                (&a.id, a.category, &a.name, &a.description, &a.source).cmp(&(
                    &b.id,
                    b.category,
                    &b.name,
                    &b.description,
                    &b.source,
                ))
            }),
            op_links: sorted(&self.op_links, Ord::cmp),
            pp_links: sorted(&self.pp_links, Ord::cmp),
            pi_links: sorted(&self.pi_links, Ord::cmp),
        }
    }

    pub fn objective(&self, id: &str) -> Option<&Objective> {
        self.objectives.iter().find(|e| e.id.as_str() == id)
    }

    pub fn principle(&self, id: &str) -> Option<&Principle> {
        self.principles.iter().find(|e| e.id.as_str() == id)
    }

    pub fn practice(&self, id: &str) -> Option<&Practice> {
        self.practices.iter().find(|e| e.id.as_str() == id)
    }

    pub fn indicator(&self, id: &str) -> Option<&Indicator> {
        self.indicators.iter().find(|e| e.id.as_str() == id)
    }

    /// Layer of the element with the given id, if any.
    pub fn layer_of(&self, id: &str) -> Option<Layer> {
        if self.objective(id).is_some() {
            Some(Layer::Objective)
        } else if self.principle(id).is_some() {
            Some(Layer::Principle)
        } else if self.practice(id).is_some() {
            Some(Layer::Practice)
        } else if self.indicator(id).is_some() {
            Some(Layer::Indicator)
        } else {
            None
        }
    }

    pub fn element_count(&self) -> usize {
        self.objectives.len() + self.principles.len() + self.practices.len() + self.indicators.len()
    }
}

impl PartialEq for ReferenceFramework {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.metadata == b.metadata
            && a.objectives == b.objectives
            && a.principles == b.principles
            && a.practices == b.practices
            && a.indicators == b.indicators
            && a.op_links == b.op_links
            && a.pp_links == b.pp_links
            && a.pi_links == b.pi_links
    }
}

impl Eq for ReferenceFramework {}

/// The objectives, principles and practices an agile method adopts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDefinition {
    pub id: ElementId,
    pub name: String,
    pub objectives: BTreeSet<ElementId>,
    pub principles: BTreeSet<ElementId>,
    pub practices: BTreeSet<ElementId>,
    pub notes: String,
}

impl MethodDefinition {
    pub fn new(id: ElementId, name: impl Into<String>) -> Self {
        MethodDefinition {
            id,
            name: name.into(),
            objectives: BTreeSet::new(),
            principles: BTreeSet::new(),
            practices: BTreeSet::new(),
            notes: String::new(),
        }
    }

    /// A method adopting every objective, principle and practice of `framework`.
    pub fn adopting_all(id: ElementId, framework: &ReferenceFramework) -> Self {
        MethodDefinition {
            name: id.to_string(),
            id,
            objectives: framework.objectives.iter().map(|e| e.id.clone()).collect(),
            principles: framework.principles.iter().map(|e| e.id.clone()).collect(),
            practices: framework.practices.iter().map(|e| e.id.clone()).collect(),
            notes: String::new(),
        }
    }
}

/// Ordinal level recorded for an indicator observation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObservationLevel {
    Absent,
    Initial,
    Partial,
    Substantial,
    Full,
}

impl ObservationLevel {
    pub const ALL: [ObservationLevel; 5] = [
        ObservationLevel::Absent,
        ObservationLevel::Initial,
        ObservationLevel::Partial,
        ObservationLevel::Substantial,
        ObservationLevel::Full,
    ];

    pub fn value(self) -> f64 {
        match self {
            ObservationLevel::Absent => 0.0,
            ObservationLevel::Initial => 0.25,
            ObservationLevel::Partial => 0.5,
            ObservationLevel::Substantial => 0.75,
            ObservationLevel::Full => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ObservationLevel::Absent => "absent",
            ObservationLevel::Initial => "initial",
            ObservationLevel::Partial => "partial",
            ObservationLevel::Substantial => "substantial",
            ObservationLevel::Full => "full",
        }
    }
}

impl std::str::FromStr for ObservationLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ObservationLevel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown observation level `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndicatorObservation {
    pub indicator: ElementId,
    pub level: ObservationLevel,
    pub evidence: String,
    pub observed_on: NaiveDate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationSet {
    pub organization: String,
    pub method: ElementId,
    pub observations: Vec<IndicatorObservation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// Stable machine-readable issue codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueCode {
    DanglingLink,
    OrphanObjective,
    OrphanPrinciple,
    OrphanPractice,
    OrphanIndicator,
    DuplicateLink,
    DuplicateId,
    EmptyName,
    EmptyObjectives,
    UnknownObjective,
    UnknownPrinciple,
    UnknownPractice,
    UnsupportedPrinciple,
    UnsupportedPractice,
    UnknownIndicator,
    DuplicateObservation,
    UnlinkedObservation,
    MismatchedMethod,
    DuplicateEntry,
    UnknownKey,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::DanglingLink => "dangling-link",
            IssueCode::OrphanObjective => "orphan-objective",
            IssueCode::OrphanPrinciple => "orphan-principle",
            IssueCode::OrphanPractice => "orphan-practice",
            IssueCode::OrphanIndicator => "orphan-indicator",
            IssueCode::DuplicateLink => "duplicate-link",
            IssueCode::DuplicateId => "duplicate-id",
            IssueCode::EmptyName => "empty-name",
            IssueCode::EmptyObjectives => "empty-objectives",
            IssueCode::UnknownObjective => "unknown-objective",
            IssueCode::UnknownPrinciple => "unknown-principle",
            IssueCode::UnknownPractice => "unknown-practice",
            IssueCode::UnsupportedPrinciple => "unsupported-principle",
            IssueCode::UnsupportedPractice => "unsupported-practice",
            IssueCode::UnknownIndicator => "unknown-indicator",
            IssueCode::DuplicateObservation => "duplicate-observation",
            IssueCode::UnlinkedObservation => "unlinked-observation",
            IssueCode::MismatchedMethod => "mismatched-method",
            IssueCode::DuplicateEntry => "duplicate-entry",
            IssueCode::UnknownKey => "unknown-key",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What an issue is about.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subject {
    Element(ElementId),
    Link(Link),
    /// Location inside a document, e.g. `objectives[3].colour`.
    Path(String),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Element(id) => write!(f, "{id}"),
            Subject::Link(link) => write!(f, "{link}"),
            Subject::Path(path) => f.write_str(path),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub severity: Severity,
    pub code: IssueCode,
    pub message: String,
    pub subject: Subject,
}

impl Issue {
    pub fn error(code: IssueCode, subject: Subject, message: impl Into<String>) -> Self {
        Issue {
            severity: Severity::Error,
            code,
            message: message.into(),
            subject,
        }
    }

    pub fn warning(code: IssueCode, subject: Subject, message: impl Into<String>) -> Self {
        Issue {
            severity: Severity::Warning,
            code,
            message: message.into(),
            subject,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{severity}[{}] {}: {}",
            self.code, self.subject, self.message
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    /// Builds a report with issues in canonical order (code, then subject).
    pub fn from_issues(mut issues: Vec<Issue>) -> Self {
        issues.sort_by(|a, b| {
            (a.code.as_str(), a.subject.to_string(), &a.message).cmp(&(
                b.code.as_str(),
                b.subject.to_string(),
                &b.message,
            ))
        });
        issues.dedup();
        let valid = !issues.iter().any(Issue::is_error);
        ValidationReport { valid, issues }
    }

    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.is_error())
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| !i.is_error())
    }

    pub fn has_code(&self, code: IssueCode) -> bool {
        self.issues.iter().any(|i| i.code == code)
    }

    pub fn count(&self, code: IssueCode) -> usize {
        self.issues.iter().filter(|i| i.code == code).count()
    }
}
