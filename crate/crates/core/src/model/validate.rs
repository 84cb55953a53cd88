use std::collections::{BTreeMap, BTreeSet};

use super::{
    ElementId, Issue, IssueCode, Layer, LinkIndex, LinkKind, MethodDefinition, ObservationSet,
    ReferenceFramework, Subject, ValidationReport,
};
use crate::error::{Error, Result};

/// Checks every structural invariant of a framework.
///
/// Never fails: every problem becomes an issue in the returned report.
pub fn validate_framework(framework: &ReferenceFramework) -> ValidationReport {
    let mut issues = Vec::new();

    // Ids must be unique across all four layers so that a bare id names
    // exactly one node of the graph.
    let mut seen: BTreeMap<&ElementId, Vec<Layer>> = BTreeMap::new();
    let layered = framework
        .objectives
        .iter()
        .map(|e| (&e.id, &e.name, Layer::Objective))
        .chain(
            framework
                .principles
                .iter()
                .map(|e| (&e.id, &e.name, Layer::Principle)),
        )
        .chain(
            framework
                .practices
                .iter()
                .map(|e| (&e.id, &e.name, Layer::Practice)),
        )
        .chain(
            framework
                .indicators
                .iter()
                .map(|e| (&e.id, &e.name, Layer::Indicator)),
        );
    for (id, name, layer) in layered {
        seen.entry(id).or_default().push(layer);
        if name.trim().is_empty() {
            issues.push(Issue::error(
                IssueCode::EmptyName,
                Subject::Element(id.clone()),
                format!("{} `{id}` has an empty name", layer.as_str()),
            ));
        }
    }
    for (id, layers) in &seen {
        if layers.len() > 1 {
            let names: Vec<_> = layers.iter().map(|l| l.as_str()).collect();
            issues.push(Issue::error(
                IssueCode::DuplicateId,
                Subject::Element((*id).clone()),
                format!(
                    "id `{id}` is defined {} times ({})",
                    layers.len(),
                    names.join(", ")
                ),
            ));
        }
    }

    let layer_ids = |layer: Layer| -> BTreeSet<&ElementId> {
        seen.iter()
            .filter(|(_, ls)| ls.contains(&layer))
            .map(|(id, _)| *id)
            .collect()
    };
    let layers = [
        layer_ids(Layer::Objective),
        layer_ids(Layer::Principle),
        layer_ids(Layer::Practice),
        layer_ids(Layer::Indicator),
    ];
    let layer_names = [
        Layer::Objective,
        Layer::Principle,
        Layer::Practice,
        Layer::Indicator,
    ];

    for kind in LinkKind::ALL {
        let k = kind as usize;
        let mut counts: BTreeMap<_, usize> = BTreeMap::new();
        for link in kind.links(framework) {
            *counts.entry(link).or_default() += 1;
            let mut missing = Vec::new();
            if !layers[k].contains(link.upper()) {
                missing.push(format!("{} `{}`", layer_names[k].as_str(), link.upper()));
            }
            if !layers[k + 1].contains(link.lower()) {
                missing.push(format!(
                    "{} `{}`",
                    layer_names[k + 1].as_str(),
                    link.lower()
                ));
            }
            if !missing.is_empty() {
                issues.push(Issue::error(
                    IssueCode::DanglingLink,
                    Subject::Link(link.clone()),
                    format!(
                        "{} entry references unknown {}",
                        kind.field(),
                        missing.join(" and ")
                    ),
                ));
            }
        }
        for (link, n) in counts {
            if n > 1 {
                issues.push(Issue::error(
                    IssueCode::DuplicateLink,
                    Subject::Link(link.clone()),
                    format!("{} contains this pair {n} times", kind.field()),
                ));
            }
        }
    }

    let index = LinkIndex::resolved(framework);
    let orphan = |code, id: &ElementId, what: &str| {
        Issue::error(code, Subject::Element(id.clone()), format!("`{id}` {what}"))
    };
    for o in &framework.objectives {
        if index.principles_of(&o.id).is_empty() {
            issues.push(orphan(
                IssueCode::OrphanObjective,
                &o.id,
                "links to no principle",
            ));
        }
    }
    for p in &framework.principles {
        if index.objectives_of(&p.id).is_empty() {
            issues.push(orphan(
                IssueCode::OrphanPrinciple,
                &p.id,
                "supports no objective",
            ));
        }
        if index.practices_of(&p.id).is_empty() {
            issues.push(orphan(
                IssueCode::OrphanPrinciple,
                &p.id,
                "is realized by no practice",
            ));
        }
    }
    for p in &framework.practices {
        if index.principles_realized_by(&p.id).is_empty() {
            issues.push(orphan(
                IssueCode::OrphanPractice,
                &p.id,
                "realizes no principle",
            ));
        }
    }
    for i in &framework.indicators {
        if index.practices_indicated_by(&i.id).is_empty() {
            issues.push(orphan(
                IssueCode::OrphanIndicator,
                &i.id,
                "is linked to no practice",
            ));
        }
    }

    ValidationReport::from_issues(issues)
}

fn require_valid(framework: &ReferenceFramework) -> Result<()> {
    let report = validate_framework(framework);
    if report.valid {
        Ok(())
    } else {
        Err(Error::FrameworkInvalid(report))
    }
}

/// Checks a method against a valid framework.
///
/// Unresolved ids and an empty objective set are errors. Adopted principles
/// that support no adopted objective, and adopted practices that realize no
/// adopted principle, are warnings.
pub fn validate_method(
    framework: &ReferenceFramework,
    method: &MethodDefinition,
) -> Result<ValidationReport> {
    require_valid(framework)?;
    let index = LinkIndex::new(framework);
    let mut issues = Vec::new();

    if method.objectives.is_empty() {
        issues.push(Issue::error(
            IssueCode::EmptyObjectives,
            Subject::Element(method.id.clone()),
            "method adopts no objectives",
        ));
    }

    let unknown = [
        (
            &method.objectives,
            Layer::Objective,
            IssueCode::UnknownObjective,
        ),
        (
            &method.principles,
            Layer::Principle,
            IssueCode::UnknownPrinciple,
        ),
        (
            &method.practices,
            Layer::Practice,
            IssueCode::UnknownPractice,
        ),
    ];
    for (ids, layer, code) in unknown {
        for id in ids {
            if framework.layer_of(id.as_str()) != Some(layer) {
                issues.push(Issue::error(
                    code,
                    Subject::Element(id.clone()),
                    format!("`{id}` is not a {} of the framework", layer.as_str()),
                ));
            }
        }
    }

    for p in &method.principles {
        let parents = index.objectives_of(p);
        if !parents.is_empty() && parents.is_disjoint(&method.objectives) {
            issues.push(Issue::warning(
                IssueCode::UnsupportedPrinciple,
                Subject::Element(p.clone()),
                "supports none of the adopted objectives",
            ));
        }
    }
    for p in &method.practices {
        let parents = index.principles_realized_by(p);
        if !parents.is_empty() && parents.is_disjoint(&method.principles) {
            issues.push(Issue::warning(
                IssueCode::UnsupportedPractice,
                Subject::Element(p.clone()),
                "realizes none of the adopted principles",
            ));
        }
    }

    Ok(ValidationReport::from_issues(issues))
}

/// Checks an observation set against a valid framework, optionally
/// cross-checking it against the method it claims to describe.
pub fn validate_observations(
    framework: &ReferenceFramework,
    observations: &ObservationSet,
    method: Option<&MethodDefinition>,
) -> Result<ValidationReport> {
    require_valid(framework)?;
    let index = LinkIndex::new(framework);
    let mut issues = Vec::new();

    if let Some(method) = method {
        if method.id != observations.method {
            issues.push(Issue::error(
                IssueCode::MismatchedMethod,
                Subject::Element(observations.method.clone()),
                format!(
                    "observations are recorded for method `{}`, not `{}`",
                    observations.method, method.id
                ),
            ));
        }
    }

    let mut counts: BTreeMap<&ElementId, usize> = BTreeMap::new();
    for obs in &observations.observations {
        *counts.entry(&obs.indicator).or_default() += 1;
    }
    for (indicator, n) in counts {
        let subject = Subject::Element(indicator.clone());
        if framework.indicator(indicator.as_str()).is_none() {
            issues.push(Issue::error(
                IssueCode::UnknownIndicator,
                subject.clone(),
                format!("`{indicator}` is not an indicator of the framework"),
            ));
        } else if let Some(method) = method {
            if index
                .practices_indicated_by(indicator)
                .is_disjoint(&method.practices)
            {
                issues.push(Issue::warning(
                    IssueCode::UnlinkedObservation,
                    subject.clone(),
                    format!(
                        "indicator is linked to no practice adopted by `{}`",
                        method.id
                    ),
                ));
            }
        }
        if n > 1 {
            issues.push(Issue::error(
                IssueCode::DuplicateObservation,
                subject,
                format!("indicator is observed {n} times"),
            ));
        }
    }

    Ok(ValidationReport::from_issues(issues))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        id, Element, Indicator, IndicatorCategory, IndicatorObservation, Link, ObservationLevel,
    };

    fn el(name: &str) -> Element {
        Element::new(id(name), name)
    }

    fn link(a: &str, b: &str) -> Link {
        Link::new(id(a), id(b))
    }

    fn small() -> ReferenceFramework {
        ReferenceFramework {
            objectives: vec![el("flexible")],
            principles: vec![el("accommodate-change")],
            practices: vec![el("no-bruf"), el("on-site-customer")],
            indicators: vec![Indicator {
                id: id("requirements-deferred"),
                name: "Requirements deferred".into(),
                category: IndicatorCategory::Project,
                description: String::new(),
                source: String::new(),
            }],
            op_links: vec![link("flexible", "accommodate-change")],
            pp_links: vec![
                link("accommodate-change", "no-bruf"),
                link("accommodate-change", "on-site-customer"),
            ],
            pi_links: vec![link("no-bruf", "requirements-deferred")],
            ..Default::default()
        }
    }

    fn codes(report: &ValidationReport) -> Vec<&'static str> {
        report.issues.iter().map(|i| i.code.as_str()).collect()
    }

    #[test]
    fn small_framework_is_valid() {
        let report = validate_framework(&small());
        assert!(report.valid, "{:?}", report.issues);
        assert!(report.issues.is_empty());
    }

    #[test]
    fn empty_framework_is_vacuously_valid() {
        assert!(validate_framework(&ReferenceFramework::default()).valid);
    }

    #[test]
    fn dangling_link_is_reported_once() {
        let mut fw = small();
        fw.op_links.push(link("flexible", "nonexistent"));
        let report = validate_framework(&fw);
        assert!(!report.valid);
        assert_eq!(codes(&report), ["dangling-link"]);
        assert_eq!(
            report.issues[0].subject,
            Subject::Link(link("flexible", "nonexistent"))
        );
    }

    #[test]
    fn cross_layer_shortcut_is_dangling() {
        let mut fw = small();
        fw.op_links.push(link("flexible", "no-bruf"));
        assert_eq!(codes(&validate_framework(&fw)), ["dangling-link"]);
    }

    #[test]
    fn principle_without_practices_is_orphan() {
        let mut fw = small();
        fw.principles.push(el("simplicity"));
        fw.op_links.push(link("flexible", "simplicity"));
        let report = validate_framework(&fw);
        assert!(!report.valid);
        assert_eq!(codes(&report), ["orphan-principle"]);
    }

    #[test]
    fn every_orphan_kind_is_detected() {
        let mut fw = small();
        fw.objectives.push(el("lonely-objective"));
        fw.principles.push(el("lonely-principle"));
        fw.practices.push(el("lonely-practice"));
        fw.indicators.push(Indicator {
            id: id("lonely-indicator"),
            name: "x".into(),
            category: IndicatorCategory::Product,
            description: String::new(),
            source: String::new(),
        });
        let report = validate_framework(&fw);
        assert_eq!(
            codes(&report),
            [
                "orphan-indicator",
                "orphan-objective",
                "orphan-practice",
                "orphan-principle",
                "orphan-principle"
            ]
        );
    }

    #[test]
    fn duplicate_links_and_ids() {
        let mut fw = small();
        fw.pp_links.push(link("accommodate-change", "no-bruf"));
        fw.practices.push(el("flexible"));
        fw.pp_links.push(link("accommodate-change", "flexible"));
        let report = validate_framework(&fw);
        assert_eq!(codes(&report), ["duplicate-id", "duplicate-link"]);
    }

    #[test]
    fn empty_name_is_an_error() {
        let mut fw = small();
        fw.objectives[0].name = "  ".into();
        assert_eq!(codes(&validate_framework(&fw)), ["empty-name"]);
    }

    #[test]
    fn issues_are_sorted_by_code_then_subject() {
        let mut fw = small();
        fw.op_links.push(link("zeta", "accommodate-change"));
        fw.op_links.push(link("alpha", "accommodate-change"));
        fw.objectives.push(el("orphaned"));
        let report = validate_framework(&fw);
        let subjects: Vec<_> = report
            .issues
            .iter()
            .map(|i| i.subject.to_string())
            .collect();
        assert_eq!(
            subjects,
            [
                "alpha -> accommodate-change",
                "zeta -> accommodate-change",
                "orphaned"
            ]
        );
    }

    #[test]
    fn method_checks() {
        let fw = small();
        let mut m = MethodDefinition::new(id("m"), "M");
        let report = validate_method(&fw, &m).unwrap();
        assert_eq!(codes(&report), ["empty-objectives"]);

        m.objectives.insert(id("flexible"));
        m.practices.insert(id("no-bruf"));
        m.principles.insert(id("ghost"));
        let report = validate_method(&fw, &m).unwrap();
        assert_eq!(
            codes(&report),
            ["unknown-principle", "unsupported-practice"]
        );
        assert!(!report.valid);

        // A practice id used as a principle is unresolved at that layer.
        m.principles = [id("no-bruf")].into();
        assert!(validate_method(&fw, &m)
            .unwrap()
            .has_code(IssueCode::UnknownPrinciple));
    }

    #[test]
    fn method_against_invalid_framework() {
        let mut fw = small();
        fw.op_links.push(link("flexible", "nonexistent"));
        let m = MethodDefinition::new(id("m"), "M");
        let err = validate_method(&fw, &m).unwrap_err();
        assert_eq!(err.code(), "framework-invalid");
    }

    fn obs(indicator: &str) -> IndicatorObservation {
        IndicatorObservation {
            indicator: id(indicator),
            level: ObservationLevel::Partial,
            evidence: String::new(),
            observed_on: chrono::NaiveDate::from_ymd_opt(2024, 1, 1).unwrap(),
        }
    }

    #[test]
    fn observation_checks() {
        let fw = small();
        let mut set = ObservationSet {
            organization: "Acme".into(),
            method: id("m"),
            observations: vec![],
        };
        assert!(validate_observations(&fw, &set, None).unwrap().valid);

        set.observations = vec![obs("requirements-deferred"), obs("requirements-deferred")];
        assert_eq!(
            codes(&validate_observations(&fw, &set, None).unwrap()),
            ["duplicate-observation"]
        );

        set.observations = vec![obs("velocity")];
        assert_eq!(
            codes(&validate_observations(&fw, &set, None).unwrap()),
            ["unknown-indicator"]
        );

        let mut m = MethodDefinition::new(id("m"), "M");
        m.objectives.insert(id("flexible"));
        set.observations = vec![obs("requirements-deferred")];
        let report = validate_observations(&fw, &set, Some(&m)).unwrap();
        assert!(report.valid);
        assert_eq!(codes(&report), ["unlinked-observation"]);

        m.practices.insert(id("no-bruf"));
        assert!(validate_observations(&fw, &set, Some(&m))
            .unwrap()
            .issues
            .is_empty());

        m.id = id("other");
        assert_eq!(
            codes(&validate_observations(&fw, &set, Some(&m)).unwrap()),
            ["mismatched-method"]
        );
    }
}
