//! Random generators for valid frameworks, methods and observation sets.
//!
//! Used by property tests and the acceptance suite.

use std::collections::BTreeSet;

use chrono::NaiveDate;
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::model::{
    Element, ElementId, FrameworkMetadata, Indicator, IndicatorCategory, IndicatorObservation,
    Link, MethodDefinition, ObservationLevel, ObservationSet, ReferenceFramework,
};

fn ids(prefix: &str, n: usize) -> Vec<ElementId> {
    (0..n)
        .map(|i| ElementId::new(format!("{prefix}-{i}")).expect("generated ids are well formed"))
        .collect()
}

/// Random framework satisfying every structural invariant, with at most
/// `max_elements` elements. The indicator layer may be empty.
pub fn random_framework<R: Rng + ?Sized>(rng: &mut R, max_elements: usize) -> ReferenceFramework {
    assert!(
        max_elements >= 3,
        "a framework needs at least three elements"
    );
    let mut budget = max_elements;
    let mut take = |rng: &mut R, max: usize, reserve: usize| {
        let n = rng.random_range(1..=max.min(budget - reserve).max(1));
        budget -= n;
        n
    };
    let n_obj = take(rng, 4, 2);
    let n_pri = take(rng, 5, 1);
    let n_pra = take(rng, 6, 0);
    let n_ind = if budget == 0 {
        0
    } else {
        rng.random_range(0..=budget.min(6))
    };

    let objectives = ids("obj", n_obj);
    let principles = ids("pri", n_pri);
    let practices = ids("pra", n_pra);
    let indicators = ids("ind", n_ind);

    let density = rng.random_range(0.1..0.6);
    let connect = |rng: &mut R, upper: &[ElementId], lower: &[ElementId]| -> BTreeSet<Link> {
        let mut links = BTreeSet::new();
        for u in upper {
            links.insert(Link::new(u.clone(), lower.choose(rng).unwrap().clone()));
        }
        for l in lower {
            links.insert(Link::new(upper.choose(rng).unwrap().clone(), l.clone()));
        }
        for u in upper {
            for l in lower {
                if rng.random_bool(density) {
                    links.insert(Link::new(u.clone(), l.clone()));
                }
            }
        }
        links
    };
    let op_links = connect(rng, &objectives, &principles);
    let pp_links = connect(rng, &principles, &practices);
    let pi_links = if indicators.is_empty() {
        BTreeSet::new()
    } else {
        // Indicators need an incoming link; practices may go without one.
        let mut links = BTreeSet::new();
        for i in &indicators {
            links.insert(Link::new(practices.choose(rng).unwrap().clone(), i.clone()));
            for p in &practices {
                if rng.random_bool(density) {
                    links.insert(Link::new(p.clone(), i.clone()));
                }
            }
        }
        links
    };

    let element = |id: &ElementId| Element::new(id.clone(), id.as_str().to_uppercase());
    ReferenceFramework {
        metadata: FrameworkMetadata {
            name: "random".into(),
            version: "0".into(),
        },
        objectives: objectives.iter().map(element).collect(),
        principles: principles.iter().map(element).collect(),
        practices: practices.iter().map(element).collect(),
        indicators: indicators
            .iter()
            .map(|id| Indicator {
                id: id.clone(),
                name: id.as_str().to_uppercase(),
                category: *IndicatorCategory::ALL.choose(rng).unwrap(),
                description: String::new(),
                source: String::new(),
            })
            .collect(),
        op_links: op_links.into_iter().collect(),
        pp_links: pp_links.into_iter().collect(),
        pi_links: pi_links.into_iter().collect(),
    }
}

/// Random method with a non-empty objective set; every id resolves.
pub fn random_method<R: Rng + ?Sized>(
    rng: &mut R,
    framework: &ReferenceFramework,
    id: &str,
) -> MethodDefinition {
    let mut subset = |items: &[Element], p: f64| -> BTreeSet<ElementId> {
        items
            .iter()
            .filter(|_| rng.random_bool(p))
            .map(|e| e.id.clone())
            .collect()
    };
    let mut objectives = subset(&framework.objectives, 0.6);
    let principles = subset(&framework.principles, 0.6);
    let practices = subset(&framework.practices, 0.6);
    if objectives.is_empty() {
        objectives.insert(framework.objectives.choose(rng).unwrap().id.clone());
    }
    MethodDefinition {
        id: ElementId::new(id).expect("caller passes a well-formed id"),
        name: id.to_string(),
        objectives,
        principles,
        practices,
        notes: String::new(),
    }
}

/// Random observations of a subset of the framework's indicators, each
/// indicator observed at most once.
pub fn random_observations<R: Rng + ?Sized>(
    rng: &mut R,
    framework: &ReferenceFramework,
    method: &ElementId,
    density: f64,
) -> ObservationSet {
    let start = NaiveDate::from_ymd_opt(2024, 1, 1).unwrap();
    let mut observations = Vec::new();
    for i in &framework.indicators {
        if rng.random_bool(density) {
            observations.push(IndicatorObservation {
                indicator: i.id.clone(),
                level: *ObservationLevel::ALL.choose(rng).unwrap(),
                evidence: format!("observed {}", i.id),
                observed_on: start + chrono::Days::new(rng.random_range(0..365)),
            });
        }
    }
    ObservationSet {
        organization: "Generated Org".into(),
        method: method.clone(),
        observations,
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::model::{validate_framework, validate_method, validate_observations};

    #[test]
    fn generated_inputs_are_valid() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let fw = random_framework(&mut rng, 20);
            assert!(fw.element_count() <= 20);
            let report = validate_framework(&fw);
            assert!(report.valid, "{:?}", report.issues);
            let m = random_method(&mut rng, &fw, "m");
            assert!(validate_method(&fw, &m).unwrap().valid);
            let obs = random_observations(&mut rng, &fw, &m.id, 0.5);
            assert!(validate_observations(&fw, &obs, None).unwrap().valid);
        }
    }
}
