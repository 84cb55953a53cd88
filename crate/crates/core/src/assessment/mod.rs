//! Adequacy, capability and effectiveness assessments.

mod adequacy;
mod attainment;
mod compare;
mod reachability;
mod report;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use adequacy::{
    assess_adequacy, objective_score, AdequacyReport, CoverageDetail, ObjectiveAdequacy,
    SuspectCode, SuspectFlag,
};
pub use attainment::{
    assess_attainment, assess_capability, assess_effectiveness, Attainment, AttainmentDetail,
    AttainmentReport,
};
pub use compare::{compare_adequacy, ComparisonRow, ComparisonTable, ObjectiveCell};
pub use reachability::{reachability, Direction, Traversal};
pub use report::{emit_report, parse_report, REPORT_FORMAT_VERSION};

/// Which bottom-up assessment an attainment report holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssessmentKind {
    Capability,
    Effectiveness,
}

impl fmt::Display for AssessmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssessmentKind::Capability => "capability",
            AssessmentKind::Effectiveness => "effectiveness",
        })
    }
}

/// Arithmetic mean with unit weights, `None` for an empty input.
pub(crate) fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}
