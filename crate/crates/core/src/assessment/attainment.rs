//! Bottom-up capability and effectiveness.
//!
//! Indicator levels are averaged into practice attainment, practices into
//! principles, principles into objectives. Only adopted elements take part.
//! Missing evidence is `unassessed`, never zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::adequacy::{check_method, AdequacyReport};
use super::{mean, AssessmentKind};
use crate::error::{Error, Result};
use crate::model::{
    validate_framework, validate_observations, ElementId, IndicatorCategory, LinkIndex,
    MethodDefinition, ObservationSet, ReferenceFramework,
};

/// An attainment value, or the marker that no evidence reached this element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Attainment {
    Assessed(f64),
    Unassessed,
}

impl Attainment {
    pub fn value(self) -> Option<f64> {
        match self {
            Attainment::Assessed(v) => Some(v),
            Attainment::Unassessed => None,
        }
    }

    pub fn is_assessed(self) -> bool {
        matches!(self, Attainment::Assessed(_))
    }

    /// Mean of the assessed values, `Unassessed` when there are none.
    pub fn mean_of(values: impl IntoIterator<Item = Attainment>) -> Attainment {
        match mean(values.into_iter().filter_map(Attainment::value)) {
            Some(v) => Attainment::Assessed(v),
            None => Attainment::Unassessed,
        }
    }
}

impl fmt::Display for Attainment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attainment::Assessed(v) => write!(f, "{v:.2}"),
            Attainment::Unassessed => f.write_str("unassessed"),
        }
    }
}

const UNASSESSED: &str = "unassessed";

impl Serialize for Attainment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Attainment::Assessed(v) => serializer.serialize_f64(*v),
            Attainment::Unassessed => serializer.serialize_str(UNASSESSED),
        }
    }
}

impl<'de> Deserialize<'de> for Attainment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct AttainmentVisitor;

        impl Visitor<'_> for AttainmentVisitor {
            type Value = Attainment;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number in [0, 1] or \"unassessed\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Attainment, E> {
                if (0.0..=1.0).contains(&v) {
                    Ok(Attainment::Assessed(v))
                } else {
                    Err(E::invalid_value(de::Unexpected::Float(v), &self))
                }
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Attainment, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Attainment, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Attainment, E> {
                if v == UNASSESSED {
                    Ok(Attainment::Unassessed)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(AttainmentVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttainmentDetail {
    pub subject: ElementId,
    pub attainment: Attainment,
    /// Observed share of the in-category indicators beneath this element;
    /// 0 when there are none.
    pub evidence_coverage: f64,
    pub contributing: Vec<(ElementId, Attainment)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttainmentReport {
    pub kind: AssessmentKind,
    pub method: ElementId,
    pub organization: String,
    pub per_practice: BTreeMap<ElementId, AttainmentDetail>,
    pub per_principle: BTreeMap<ElementId, AttainmentDetail>,
    pub per_objective: BTreeMap<ElementId, AttainmentDetail>,
    pub overall: Attainment,
    pub adequacy_context: AdequacyReport,
    /// Set when the adequacy context carries suspect flags.
    pub qualified: bool,
    pub notes: Vec<String>,
}

pub fn assess_capability(
    framework: &ReferenceFramework,
    method: &MethodDefinition,
    observations: &ObservationSet,
    adequacy: Option<&AdequacyReport>,
) -> Result<AttainmentReport> {
    assess_attainment(
        AssessmentKind::Capability,
        framework,
        method,
        observations,
        adequacy,
    )
}

pub fn assess_effectiveness(
    framework: &ReferenceFramework,
    method: &MethodDefinition,
    observations: &ObservationSet,
    adequacy: Option<&AdequacyReport>,
) -> Result<AttainmentReport> {
    assess_attainment(
        AssessmentKind::Effectiveness,
        framework,
        method,
        observations,
        adequacy,
    )
}

/// Shared bottom-up traversal; `kind` selects the indicator categories.
pub fn assess_attainment(
    kind: AssessmentKind,
    framework: &ReferenceFramework,
    method: &MethodDefinition,
    observations: &ObservationSet,
    adequacy: Option<&AdequacyReport>,
) -> Result<AttainmentReport> {
    let report = validate_framework(framework);
    if !report.valid {
        return Err(Error::FrameworkInvalid(report));
    }
    let adequacy = adequacy.ok_or(Error::AdequacyMissing { kind })?;
    if adequacy.method != method.id {
        return Err(Error::MismatchedMethod {
            what: "adequacy report",
            expected: method.id.clone(),
            found: adequacy.method.clone(),
        });
    }
    if observations.method != method.id {
        return Err(Error::MismatchedMethod {
            what: "observation set",
            expected: method.id.clone(),
            found: observations.method.clone(),
        });
    }
    check_method(framework, method)?;
    let report = validate_observations(framework, observations, Some(method))?;
    if !report.valid {
        return Err(Error::ObservationsInvalid(report));
    }

    let index = LinkIndex::new(framework);
    let in_scope: BTreeSet<&ElementId> = framework
        .indicators
        .iter()
        .filter(|i| kind.categories().contains(&i.category))
        .map(|i| &i.id)
        .collect();
    let levels: BTreeMap<&ElementId, f64> = observations
        .observations
        .iter()
        .filter(|o| in_scope.contains(&o.indicator))
        .map(|o| (&o.indicator, o.level.value()))
        .collect();

    // In-scope indicators beneath each adopted practice.
    let indicators_under: BTreeMap<&ElementId, BTreeSet<&ElementId>> = method
        .practices
        .iter()
        .map(|r| {
            let linked = index
                .indicators_of(r)
                .iter()
                .filter(|i| in_scope.contains(i))
                .collect();
            (r, linked)
        })
        .collect();
    let coverage = |indicators: &BTreeSet<&ElementId>| -> f64 {
        if indicators.is_empty() {
            0.0
        } else {
            let observed = indicators
                .iter()
                .filter(|i| levels.contains_key(*i))
                .count();
            observed as f64 / indicators.len() as f64
        }
    };

    let mut per_practice = BTreeMap::new();
    for (&practice, indicators) in &indicators_under {
        let contributing: Vec<_> = indicators
            .iter()
            .map(|&i| {
                let a = levels
                    .get(i)
                    .map_or(Attainment::Unassessed, |&v| Attainment::Assessed(v));
                (i.clone(), a)
            })
            .collect();
        per_practice.insert(
            practice.clone(),
            AttainmentDetail {
                subject: practice.clone(),
                attainment: Attainment::mean_of(contributing.iter().map(|(_, a)| *a)),
                evidence_coverage: coverage(indicators),
                contributing,
            },
        );
    }

    let mut principle_indicators: BTreeMap<&ElementId, BTreeSet<&ElementId>> = BTreeMap::new();
    let mut per_principle = BTreeMap::new();
    for principle in &method.principles {
        let practices: Vec<_> = index
            .practices_of(principle)
            .intersection(&method.practices)
            .collect();
        let indicators: BTreeSet<&ElementId> = practices
            .iter()
            .flat_map(|r| indicators_under[r].iter().copied())
            .collect();
        let contributing: Vec<_> = practices
            .iter()
            .map(|&r| (r.clone(), per_practice[r].attainment))
            .collect();
        per_principle.insert(
            principle.clone(),
            AttainmentDetail {
                subject: principle.clone(),
                attainment: Attainment::mean_of(contributing.iter().map(|(_, a)| *a)),
                evidence_coverage: coverage(&indicators),
                contributing,
            },
        );
        principle_indicators.insert(principle, indicators);
    }

    let mut per_objective = BTreeMap::new();
    for objective in &method.objectives {
        let principles: Vec<_> = index
            .principles_of(objective)
            .intersection(&method.principles)
            .collect();
        let indicators: BTreeSet<&ElementId> = principles
            .iter()
            .flat_map(|p| principle_indicators[p].iter().copied())
            .collect();
        let contributing: Vec<_> = principles
            .iter()
            .map(|&p| (p.clone(), per_principle[p].attainment))
            .collect();
        per_objective.insert(
            objective.clone(),
            AttainmentDetail {
                subject: objective.clone(),
                attainment: Attainment::mean_of(contributing.iter().map(|(_, a)| *a)),
                evidence_coverage: coverage(&indicators),
                contributing,
            },
        );
    }

    let overall = Attainment::mean_of(
        per_objective
            .values()
            .map(|d: &AttainmentDetail| d.attainment),
    );
    let categories: Vec<_> = kind.categories().iter().map(|c| c.as_str()).collect();
    Ok(AttainmentReport {
        kind,
        method: method.id.clone(),
        organization: observations.organization.clone(),
        per_practice,
        per_principle,
        per_objective,
        overall,
        adequacy_context: adequacy.clone(),
        qualified: adequacy.is_suspect(),
        notes: vec![format!(
            "only {} indicators are considered; observations in other categories are ignored",
            categories.join(", ")
        )],
    })
}

impl AssessmentKind {
    pub fn categories(self) -> &'static [IndicatorCategory] {
        match self {
            AssessmentKind::Capability => &IndicatorCategory::CAPABILITY,
            AssessmentKind::Effectiveness => &IndicatorCategory::EFFECTIVENESS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assessment::assess_adequacy;
    use crate::catalog::builtin_reference;
    use crate::model::{id, IndicatorObservation, ObservationLevel};
    use chrono::NaiveDate;

    fn method() -> MethodDefinition {
        let mut m = MethodDefinition::new(id("m"), "M");
        m.objectives.insert(id("flexible"));
        m.principles.insert(id("accommodate-change"));
        m.practices.insert(id("no-bruf"));
        m
    }

    fn observe(pairs: &[(&str, ObservationLevel)]) -> ObservationSet {
        ObservationSet {
            organization: "Acme".into(),
            method: id("m"),
            observations: pairs
                .iter()
                .map(|(i, level)| IndicatorObservation {
                    indicator: id(i),
                    level: *level,
                    evidence: String::new(),
                    observed_on: NaiveDate::from_ymd_opt(2024, 3, 1).unwrap(),
                })
                .collect(),
        }
    }

    #[test]
    fn capability_requires_adequacy() {
        let fw = builtin_reference();
        let err = assess_capability(&fw, &method(), &observe(&[]), None).unwrap_err();
        assert_eq!(err.code(), "adequacy-missing");
        let err = assess_effectiveness(&fw, &method(), &observe(&[]), None).unwrap_err();
        assert_eq!(err.code(), "adequacy-missing");
    }

    #[test]
    fn mismatched_method() {
        let fw = builtin_reference();
        let mut other = method();
        other.id = id("other");
        let adequacy = assess_adequacy(&fw, &other).unwrap();
        let err = assess_capability(&fw, &method(), &observe(&[]), Some(&adequacy)).unwrap_err();
        assert_eq!(err.code(), "mismatched-method");

        let adequacy = assess_adequacy(&fw, &method()).unwrap();
        let mut obs = observe(&[]);
        obs.method = id("other");
        let err = assess_capability(&fw, &method(), &obs, Some(&adequacy)).unwrap_err();
        assert_eq!(err.code(), "mismatched-method");
    }

    #[test]
    fn invalid_observations_are_rejected() {
        let fw = builtin_reference();
        let adequacy = assess_adequacy(&fw, &method()).unwrap();
        let obs = observe(&[("velocity-chart", ObservationLevel::Full)]);
        let err = assess_capability(&fw, &method(), &obs, Some(&adequacy)).unwrap_err();
        assert_eq!(err.code(), "observations-invalid");
    }

    #[test]
    fn empty_observations_are_unassessed() {
        let fw = builtin_reference();
        let adequacy = assess_adequacy(&fw, &method()).unwrap();
        let r = assess_capability(&fw, &method(), &observe(&[]), Some(&adequacy)).unwrap();
        assert_eq!(r.overall, Attainment::Unassessed);
        for d in r
            .per_practice
            .values()
            .chain(r.per_principle.values())
            .chain(r.per_objective.values())
        {
            assert_eq!(d.attainment, Attainment::Unassessed);
            assert_eq!(d.evidence_coverage, 0.0);
        }
    }

    #[test]
    fn two_levels_average() {
        let fw = builtin_reference();
        let adequacy = assess_adequacy(&fw, &method()).unwrap();
        let obs = observe(&[
            ("backlog-reprioritized", ObservationLevel::Partial),
            ("requirements-deferred", ObservationLevel::Full),
        ]);
        let r = assess_capability(&fw, &method(), &obs, Some(&adequacy)).unwrap();
        let practice = &r.per_practice[&id("no-bruf")];
        assert_eq!(practice.attainment, Attainment::Assessed(0.75));
        assert_eq!(
            r.per_principle[&id("accommodate-change")].attainment,
            Attainment::Assessed(0.75)
        );
        assert_eq!(r.overall, Attainment::Assessed(0.75));
        assert!(!r.qualified);
    }

    #[test]
    fn attainment_serializes_marker() {
        assert_eq!(
            serde_json::to_string(&Attainment::Unassessed).unwrap(),
            "\"unassessed\""
        );
        assert_eq!(
            serde_json::to_string(&Attainment::Assessed(0.75)).unwrap(),
            "0.75"
        );
        let back: Attainment = serde_json::from_str("1").unwrap();
        assert_eq!(back, Attainment::Assessed(1.0));
        assert!(serde_json::from_str::<Attainment>("\"mostly\"").is_err());
        assert!(serde_json::from_str::<Attainment>("1.5").is_err());
    }

    #[test]
    fn mean_of_skips_unassessed() {
        let v = [
            Attainment::Assessed(0.5),
            Attainment::Unassessed,
            Attainment::Assessed(1.0),
        ];
        assert_eq!(Attainment::mean_of(v), Attainment::Assessed(0.75));
        assert_eq!(
            Attainment::mean_of([Attainment::Unassessed]),
            Attainment::Unassessed
        );
    }
}
