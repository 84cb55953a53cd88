//! Top-down adequacy: does a method adopt the principles its objectives
//! require, and the practices that realize those principles?

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::mean;
use crate::error::{Error, Result};
use crate::model::{
    validate_framework, validate_method, ElementId, LinkIndex, MethodDefinition, ReferenceFramework,
};

/// Coverage of one element's linked children by a method.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageDetail {
    pub subject: ElementId,
    pub required: BTreeSet<ElementId>,
    pub adopted: BTreeSet<ElementId>,
    pub ratio: f64,
    pub missing: BTreeSet<ElementId>,
}

impl CoverageDetail {
    fn new(
        subject: &ElementId,
        required: &BTreeSet<ElementId>,
        selected: &BTreeSet<ElementId>,
    ) -> Self {
        let adopted: BTreeSet<_> = required.intersection(selected).cloned().collect();
        let missing: BTreeSet<_> = required.difference(selected).cloned().collect();
        let ratio = if required.is_empty() {
            0.0
        } else {
            adopted.len() as f64 / required.len() as f64
        };
        CoverageDetail {
            subject: subject.clone(),
            required: required.clone(),
            adopted,
            ratio,
            missing,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveAdequacy {
    pub principle_coverage: CoverageDetail,
    /// One entry per adopted principle supporting the objective.
    pub practice_coverage: Vec<CoverageDetail>,
    pub score: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuspectCode {
    /// A principle required by an adopted objective is not adopted.
    MissingPrinciple,
    /// An adopted principle supporting an adopted objective has no adopted practice.
    UnrealizedPrinciple,
}

impl SuspectCode {
    pub fn as_str(self) -> &'static str {
        match self {
            SuspectCode::MissingPrinciple => "missing-principle",
            SuspectCode::UnrealizedPrinciple => "unrealized-principle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SuspectFlag {
    pub code: SuspectCode,
    pub subject: ElementId,
    /// The objective under which the flag was raised.
    pub context: ElementId,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdequacyReport {
    pub method: ElementId,
    pub per_objective: BTreeMap<ElementId, ObjectiveAdequacy>,
    pub overall_score: f64,
    pub suspect_flags: Vec<SuspectFlag>,
}

impl AdequacyReport {
    pub fn is_suspect(&self) -> bool {
        !self.suspect_flags.is_empty()
    }
}

/// Score of one objective from its principle coverage ratio and the practice
/// coverage ratios of the adopted supporting principles.
///
/// The product form makes the score 0 whenever either level is entirely
/// missing. Zero adopted principles scores 0.
pub fn objective_score(principle_ratio: f64, practice_ratios: &[f64]) -> f64 {
    match mean(practice_ratios.iter().copied()) {
        Some(m) => principle_ratio * m,
        None => 0.0,
    }
}

pub(crate) fn check_method(
    framework: &ReferenceFramework,
    method: &MethodDefinition,
) -> Result<()> {
    let report = validate_method(framework, method)?;
    if report.valid {
        Ok(())
    } else {
        Err(Error::MethodInvalid {
            method: method.id.clone(),
            report,
        })
    }
}

/// Assesses how adequately `method` covers the framework below each of its
/// objectives. Needs no organization or observations.
pub fn assess_adequacy(
    framework: &ReferenceFramework,
    method: &MethodDefinition,
) -> Result<AdequacyReport> {
    let report = validate_framework(framework);
    if !report.valid {
        return Err(Error::FrameworkInvalid(report));
    }
    check_method(framework, method)?;
    Ok(adequacy_unchecked(&LinkIndex::new(framework), method))
}

pub(crate) fn adequacy_unchecked(index: &LinkIndex, method: &MethodDefinition) -> AdequacyReport {
    let mut per_objective = BTreeMap::new();
    let mut flags = BTreeSet::new();

    for objective in &method.objectives {
        let principle_coverage = CoverageDetail::new(
            objective,
            index.principles_of(objective),
            &method.principles,
        );
        for p in &principle_coverage.missing {
            flags.insert(SuspectFlag {
                code: SuspectCode::MissingPrinciple,
                subject: p.clone(),
                context: objective.clone(),
            });
        }

        let practice_coverage: Vec<_> = principle_coverage
            .adopted
            .iter()
            .map(|p| CoverageDetail::new(p, index.practices_of(p), &method.practices))
            .collect();
        for c in &practice_coverage {
            if c.adopted.is_empty() {
                flags.insert(SuspectFlag {
                    code: SuspectCode::UnrealizedPrinciple,
                    subject: c.subject.clone(),
                    context: objective.clone(),
                });
            }
        }

        let ratios: Vec<f64> = practice_coverage.iter().map(|c| c.ratio).collect();
        let score = objective_score(principle_coverage.ratio, &ratios);
        per_objective.insert(
            objective.clone(),
            ObjectiveAdequacy {
                principle_coverage,
                practice_coverage,
                score,
            },
        );
    }

    let overall_score = mean(per_objective.values().map(|o| o.score)).unwrap_or(0.0);
    AdequacyReport {
        method: method.id.clone(),
        per_objective,
        overall_score,
        suspect_flags: flags.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_reference;
    use crate::model::id;

    fn fragment_method(with_practice: bool) -> MethodDefinition {
        let mut m = MethodDefinition::new(id("fragment"), "flexible fragment");
        m.objectives.insert(id("flexible"));
        m.principles.insert(id("accommodate-change"));
        if with_practice {
            m.practices.insert(id("face-to-face-communication"));
        }
        m
    }

    #[test]
    fn full_adoption_scores_one() {
        let fw = builtin_reference();
        let m = MethodDefinition::adopting_all(id("all"), &fw);
        let r = assess_adequacy(&fw, &m).unwrap();
        assert_eq!(r.overall_score, 1.0);
        assert!(r.suspect_flags.is_empty());
        for o in r.per_objective.values() {
            assert_eq!(o.score, 1.0);
            assert_eq!(o.principle_coverage.ratio, 1.0);
            assert!(o.practice_coverage.iter().all(|c| c.ratio == 1.0));
        }
    }

    #[test]
    fn anchored_fragment_one_practice() {
        let fw = builtin_reference();
        let r = assess_adequacy(&fw, &fragment_method(true)).unwrap();
        let flexible = &r.per_objective[&id("flexible")];
        assert_eq!(flexible.principle_coverage.ratio, 1.0);
        assert_eq!(flexible.practice_coverage.len(), 1);
        let practices = &flexible.practice_coverage[0];
        assert_eq!(practices.ratio, 1.0 / 3.0);
        assert_eq!(
            practices.missing,
            [id("no-bruf"), id("on-site-customer")]
                .into_iter()
                .collect()
        );
        assert_eq!(flexible.score, 1.0 / 3.0);
        assert_eq!(r.overall_score, 1.0 / 3.0);
        assert!(r.suspect_flags.is_empty());
    }

    #[test]
    fn anchored_fragment_no_practice_is_unrealized() {
        let fw = builtin_reference();
        let r = assess_adequacy(&fw, &fragment_method(false)).unwrap();
        assert_eq!(r.per_objective[&id("flexible")].score, 0.0);
        assert_eq!(
            r.suspect_flags,
            vec![SuspectFlag {
                code: SuspectCode::UnrealizedPrinciple,
                subject: id("accommodate-change"),
                context: id("flexible"),
            }]
        );
    }

    #[test]
    fn no_adopted_principle_scores_zero() {
        let fw = builtin_reference();
        let mut m = fragment_method(false);
        m.principles.clear();
        let r = assess_adequacy(&fw, &m).unwrap();
        assert_eq!(r.per_objective[&id("flexible")].score, 0.0);
        assert_eq!(r.suspect_flags[0].code, SuspectCode::MissingPrinciple);
    }

    #[test]
    fn invalid_method_is_rejected() {
        let fw = builtin_reference();
        let m = MethodDefinition::new(id("empty"), "Empty");
        let err = assess_adequacy(&fw, &m).unwrap_err();
        assert_eq!(err.code(), "method-invalid");
    }

    #[test]
    fn score_function() {
        assert_eq!(objective_score(0.5, &[]), 0.0);
        assert_eq!(objective_score(0.5, &[1.0, 0.5]), 0.375);
        assert_eq!(objective_score(1.0, &[1.0 / 3.0]), 1.0 / 3.0);
    }
}
